#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bench.hpp"
#include "geo.hpp"

namespace meshfree {

struct ConvergeResult {
    std::vector<ConvergenceRow> rows;
    int failed_rows = 0;
};

// Runs the sweep and writes the CSV atomically.
ConvergeResult run_converge(const ConvergenceOptions& options, const std::string& csv_path);

struct CaseStudyOptions {
    std::optional<std::string> stations_path; // both set, or neither (synthesize)
    std::optional<std::string> readings_path;
    std::string polygon_path;
    int interior_points = 3881;
    double boundary_spacing = 0.25; // degrees
    int hour_start = 1;
    int hour_end = 1;
    MethodSelection methods;
    KernelKind kernel = KernelKind::Multiquadric;
    double epsilon = 1.0;
    IdwConfig idw;
    std::uint64_t seed = 42;
    int threads = 0;
    std::string out_dir = "out";
    // Synthesizer grid resolution.
    double lon_step = 0.625;
    double lat_step = 0.5;
};

struct CaseStudyOutput {
    std::string path;
    double min_value = 0.0;
    double max_value = 0.0;
};

// For each selected method and hour writes `<out>/<method>_hour<h>.csv` and
// `.svg`; returns one entry per written file.
std::vector<CaseStudyOutput> run_case_study(const CaseStudyOptions& options);

struct GenPointsResult {
    int point_count = 0;
    int triangle_count = 0;
};

// Writes boundary + interior points and the triangle index list of their
// Delaunay mesh as a sectioned CSV.
GenPointsResult run_gen_points(const std::string& polygon_path, int interior_count,
                               std::uint64_t seed, double boundary_spacing,
                               const std::string& out_path);

} // namespace meshfree
