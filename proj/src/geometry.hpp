#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace meshfree {

struct Point2D {
    double x = 0.0;
    double y = 0.0;
};

double euclidean_distance(const Point2D& a, const Point2D& b);

// Closed ring; the last vertex implicitly joins the first.
struct PolygonBoundary {
    std::vector<Point2D> vertices;

    // Validates: >= 3 vertices, consecutive vertices distinct, nonzero area.
    static PolygonBoundary from_vertices(std::vector<Point2D> verts);

    double area() const;
    void bounding_box(double& min_x, double& min_y, double& max_x, double& max_y) const;
};

// Boundary points count as inside.
bool point_in_polygon(const Point2D& p, const PolygonBoundary& poly);

// Crossing test only; points on the boundary are rejected.
bool point_strictly_inside(const Point2D& p, const PolygonBoundary& poly);

// All polygon vertices plus points along each edge at intervals <= target_spacing.
std::vector<Point2D> generate_boundary_points(const PolygonBoundary& poly, double target_spacing);

// Seeded rejection sampling from the polygon's bounding box; returns exactly
// `count` points strictly inside the polygon. Throws SamplingStalledError if a
// window of 100,000 consecutive draws yields no acceptance.
std::vector<Point2D> generate_interior_points(const PolygonBoundary& poly, std::size_t count,
                                              std::uint64_t seed);

struct TriangleMesh {
    std::vector<Point2D> points;
    std::vector<std::array<int, 3>> triangles; // CCW vertex indices
};

// Bowyer-Watson Delaunay triangulation. Requires >= 3 pairwise-distinct,
// not-all-collinear points.
TriangleMesh triangulate(const std::vector<Point2D>& points);

// CSV with one `lon,lat` pair per line; `#` comment lines ignored.
PolygonBoundary load_polygon_csv(const std::string& path);

} // namespace meshfree
