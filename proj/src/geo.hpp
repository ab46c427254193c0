#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "geometry.hpp"
#include "idw.hpp"
#include "kernels.hpp"
#include "rbf.hpp"

namespace meshfree {

struct StationRecord {
    std::string station_id;
    Point2D location;           // lon, lat in degrees
    std::vector<double> series; // hourly temperature, degrees F
};

struct ScalarField {
    std::vector<Point2D> points;
    std::vector<double> values;
    std::optional<TriangleMesh> mesh;
};

// Synthetic diurnal temperature model used by synthesize_stations.
inline constexpr double kSynthBaseTempF = 55.0;
inline constexpr double kSynthLonGradientFPerDeg = 0.8;
inline constexpr double kSynthLatGradientFPerDeg = -2.5;
inline constexpr double kSynthDiurnalAmplitudeF = 8.0;
inline constexpr double kSynthNoiseBoundF = 0.5;

// Two-file CSV scheme: stations `station_id,lon,lat`, readings
// `station_id,hour_index,temperature_f` (hour_index 1-based, contiguous per
// station). Readings outside [-80, 150] F are reported in `warnings`, not
// dropped.
std::vector<StationRecord> load_stations(const std::string& stations_csv,
                                         const std::string& readings_csv,
                                         std::vector<std::string>* warnings = nullptr);

// Grid of stations over the polygon's bounding box at the given resolution,
// with temperatures from the synthetic model; deterministic in seed.
std::vector<StationRecord> synthesize_stations(const PolygonBoundary& poly, double lon_step,
                                               double lat_step, int hours, std::uint64_t seed);

struct RbfMethod {
    KernelKind kernel = KernelKind::Multiquadric;
    double epsilon = 1.0;
};
using InterpolationMethod = std::variant<RbfMethod, IdwConfig>;

// hour_index is 1-based into every station's series.
ScalarField interpolate_hour(const std::vector<StationRecord>& stations, int hour_index,
                             const InterpolationMethod& method,
                             std::vector<Point2D> targets, int threads = 0);

// `lon,lat,value` rows in point order, full float precision.
void export_field_csv(const ScalarField& field, const std::string& path);

struct Segment {
    Point2D a, b;
};

// Marching-triangles contour extraction; one segment list per level.
// Vertex values exactly at a level are nudged by +1e-9 * (value range).
std::vector<std::vector<Segment>> extract_contours(const ScalarField& field,
                                                   const std::vector<double>& levels);

// 10 levels evenly spaced strictly inside [min, max].
std::vector<double> default_contour_levels(const ScalarField& field, int count = 10);

// Standalone SVG 1.1: triangles filled by a linear blue-cyan-yellow-red ramp
// over [min, max], contour polylines, polygon outline, value-range legend.
// Width 1000 px, drawing height scaled by the bounding-box aspect ratio.
void render_contour_svg(const ScalarField& field, const std::vector<double>& levels,
                        const PolygonBoundary& poly, const std::string& path);

} // namespace meshfree
