#include "geometry.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>

#include "errors.hpp"

namespace meshfree {

namespace {

constexpr double kDuplicateTol = 1e-12;

double uniform_unit(std::mt19937_64& rng) {
    // 53 random bits -> [0,1); identical across platforms, unlike the
    // library distribution adaptors.
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double point_segment_distance(const Point2D& p, const Point2D& a, const Point2D& b) {
    const double vx = b.x - a.x, vy = b.y - a.y;
    const double wx = p.x - a.x, wy = p.y - a.y;
    const double len2 = vx * vx + vy * vy;
    double t = len2 > 0.0 ? (wx * vx + wy * vy) / len2 : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    const double dx = p.x - (a.x + t * vx), dy = p.y - (a.y + t * vy);
    return std::sqrt(dx * dx + dy * dy);
}

bool crossing_test(const Point2D& p, const std::vector<Point2D>& v) {
    bool inside = false;
    const std::size_t n = v.size();
    for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
        if ((v[i].y > p.y) != (v[j].y > p.y)) {
            const double xint = v[j].x + (p.y - v[j].y) / (v[i].y - v[j].y) * (v[i].x - v[j].x);
            if (p.x < xint) inside = !inside;
        }
    }
    return inside;
}

bool on_boundary(const Point2D& p, const PolygonBoundary& poly, double tol) {
    const std::size_t n = poly.vertices.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Point2D& a = poly.vertices[i];
        const Point2D& b = poly.vertices[(i + 1) % n];
        if (point_segment_distance(p, a, b) <= tol) return true;
    }
    return false;
}

double boundary_tol(const PolygonBoundary& poly) {
    double minx, miny, maxx, maxy;
    poly.bounding_box(minx, miny, maxx, maxy);
    const double extent = std::max(maxx - minx, maxy - miny);
    return 1e-12 * std::max(1.0, extent);
}

} // namespace

double euclidean_distance(const Point2D& a, const Point2D& b) {
    return std::hypot(a.x - b.x, a.y - b.y);
}

PolygonBoundary PolygonBoundary::from_vertices(std::vector<Point2D> verts) {
    if (verts.size() < 3)
        throw std::invalid_argument("polygon needs at least 3 vertices, got " +
                                    std::to_string(verts.size()));
    for (const Point2D& p : verts)
        if (!std::isfinite(p.x) || !std::isfinite(p.y))
            throw std::invalid_argument("polygon vertex is not finite");
    const std::size_t n = verts.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (euclidean_distance(verts[i], verts[(i + 1) % n]) <= kDuplicateTol)
            throw std::invalid_argument("consecutive polygon vertices coincide at index " +
                                        std::to_string(i));
    }
    PolygonBoundary poly{std::move(verts)};
    if (poly.area() <= 0.0)
        throw std::invalid_argument("polygon encloses zero area");
    return poly;
}

double PolygonBoundary::area() const {
    double twice = 0.0;
    const std::size_t n = vertices.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Point2D& a = vertices[i];
        const Point2D& b = vertices[(i + 1) % n];
        twice += a.x * b.y - b.x * a.y;
    }
    return std::abs(twice) / 2.0;
}

void PolygonBoundary::bounding_box(double& min_x, double& min_y, double& max_x,
                                   double& max_y) const {
    min_x = min_y = std::numeric_limits<double>::infinity();
    max_x = max_y = -std::numeric_limits<double>::infinity();
    for (const Point2D& p : vertices) {
        min_x = std::min(min_x, p.x);
        min_y = std::min(min_y, p.y);
        max_x = std::max(max_x, p.x);
        max_y = std::max(max_y, p.y);
    }
}

bool point_in_polygon(const Point2D& p, const PolygonBoundary& poly) {
    if (on_boundary(p, poly, boundary_tol(poly))) return true;
    return crossing_test(p, poly.vertices);
}

bool point_strictly_inside(const Point2D& p, const PolygonBoundary& poly) {
    if (on_boundary(p, poly, boundary_tol(poly))) return false;
    return crossing_test(p, poly.vertices);
}

std::vector<Point2D> generate_boundary_points(const PolygonBoundary& poly,
                                              double target_spacing) {
    if (!(target_spacing > 0.0))
        throw std::invalid_argument("target_spacing must be positive");
    std::vector<Point2D> out;
    const std::size_t n = poly.vertices.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Point2D& a = poly.vertices[i];
        const Point2D& b = poly.vertices[(i + 1) % n];
        out.push_back(a);
        const double len = euclidean_distance(a, b);
        const int segments = static_cast<int>(std::ceil(len / target_spacing));
        for (int k = 1; k < segments; ++k) {
            const double t = static_cast<double>(k) / segments;
            out.push_back({a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)});
        }
    }
    return out;
}

std::vector<Point2D> generate_interior_points(const PolygonBoundary& poly, std::size_t count,
                                              std::uint64_t seed) {
    if (count < 1) throw std::invalid_argument("count must be >= 1");
    double minx, miny, maxx, maxy;
    poly.bounding_box(minx, miny, maxx, maxy);
    std::mt19937_64 rng(seed);
    std::vector<Point2D> out;
    out.reserve(count);
    std::size_t rejects_in_window = 0;
    while (out.size() < count) {
        const Point2D p{minx + uniform_unit(rng) * (maxx - minx),
                        miny + uniform_unit(rng) * (maxy - miny)};
        if (point_strictly_inside(p, poly)) {
            out.push_back(p);
            rejects_in_window = 0;
        } else if (++rejects_in_window >= 100000) {
            throw SamplingStalledError(
                "interior point sampling stalled: 100000 consecutive rejections "
                "(polygon degenerate relative to its bounding box?)");
        }
    }
    return out;
}

namespace {

struct Tri {
    int a, b, c; // CCW
};

double orient2d(const Point2D& a, const Point2D& b, const Point2D& c) {
    return (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
}

// > 0 when d lies inside the circumcircle of CCW triangle abc.
double incircle_det(const Point2D& a, const Point2D& b, const Point2D& c, const Point2D& d) {
    const double adx = a.x - d.x, ady = a.y - d.y;
    const double bdx = b.x - d.x, bdy = b.y - d.y;
    const double cdx = c.x - d.x, cdy = c.y - d.y;
    const double ad2 = adx * adx + ady * ady;
    const double bd2 = bdx * bdx + bdy * bdy;
    const double cd2 = cdx * cdx + cdy * cdy;
    return adx * (bdy * cd2 - cdy * bd2) - ady * (bdx * cd2 - cdx * bd2) +
           ad2 * (bdx * cdy - cdx * bdy);
}

} // namespace

TriangleMesh triangulate(const std::vector<Point2D>& points) {
    const std::size_t n = points.size();
    if (n < 3) throw std::invalid_argument("triangulation needs at least 3 points");
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (euclidean_distance(points[i], points[j]) <= kDuplicateTol)
                throw std::invalid_argument("duplicate points at indices " + std::to_string(i) +
                                            " and " + std::to_string(j));

    // Uniform similarity transform keeps the Delaunay structure and makes the
    // in-circle tolerance meaningful regardless of coordinate units.
    double minx = points[0].x, maxx = points[0].x, miny = points[0].y, maxy = points[0].y;
    for (const Point2D& p : points) {
        minx = std::min(minx, p.x);
        maxx = std::max(maxx, p.x);
        miny = std::min(miny, p.y);
        maxy = std::max(maxy, p.y);
    }
    const double extent = std::max(maxx - minx, maxy - miny);
    const double scale = extent > 0.0 ? 1.0 / extent : 1.0;
    const double cx = (minx + maxx) / 2.0, cy = (miny + maxy) / 2.0;

    std::vector<Point2D> pts(n + 3);
    for (std::size_t i = 0; i < n; ++i)
        pts[i] = {(points[i].x - cx) * scale, (points[i].y - cy) * scale};

    bool collinear = true;
    for (std::size_t i = 2; i < n && collinear; ++i)
        if (std::abs(orient2d(pts[0], pts[1], pts[i])) > 1e-14) collinear = false;
    if (collinear) throw std::invalid_argument("all points are collinear");

    // Super-triangle well outside the normalized [-0.5, 0.5] box.
    const int s0 = static_cast<int>(n), s1 = s0 + 1, s2 = s0 + 2;
    pts[s0] = {-100.0, -100.0};
    pts[s1] = {100.0, -100.0};
    pts[s2] = {0.0, 100.0};

    std::vector<Tri> tris{{s0, s1, s2}};
    constexpr double kInsideTol = 1e-12;

    for (int ip = 0; ip < static_cast<int>(n); ++ip) {
        const Point2D& p = pts[ip];
        std::vector<std::size_t> bad;
        for (std::size_t t = 0; t < tris.size(); ++t) {
            const Tri& tr = tris[t];
            if (incircle_det(pts[tr.a], pts[tr.b], pts[tr.c], p) > kInsideTol) bad.push_back(t);
        }
        // Cavity boundary = edges used by exactly one bad triangle.
        std::vector<std::array<int, 2>> edges;
        for (std::size_t t : bad) {
            const Tri& tr = tris[t];
            edges.push_back({tr.a, tr.b});
            edges.push_back({tr.b, tr.c});
            edges.push_back({tr.c, tr.a});
        }
        std::vector<std::array<int, 2>> boundary;
        for (std::size_t i = 0; i < edges.size(); ++i) {
            bool shared = false;
            for (std::size_t j = 0; j < edges.size() && !shared; ++j)
                if (i != j && edges[i][0] == edges[j][1] && edges[i][1] == edges[j][0])
                    shared = true;
            if (!shared) boundary.push_back(edges[i]);
        }
        for (auto it = bad.rbegin(); it != bad.rend(); ++it) tris.erase(tris.begin() + *it);
        for (const auto& e : boundary) {
            Tri t{e[0], e[1], ip};
            if (orient2d(pts[t.a], pts[t.b], pts[t.c]) < 0.0) std::swap(t.b, t.c);
            tris.push_back(t);
        }
    }

    TriangleMesh mesh;
    mesh.points = points;
    for (const Tri& t : tris) {
        if (t.a >= static_cast<int>(n) || t.b >= static_cast<int>(n) ||
            t.c >= static_cast<int>(n))
            continue;
        mesh.triangles.push_back({t.a, t.b, t.c});
    }
    return mesh;
}

PolygonBoundary load_polygon_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open polygon file: " + path);
    std::vector<Point2D> verts;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        std::istringstream ss(line);
        double lon, lat;
        char comma;
        if (!(ss >> lon >> comma >> lat) || comma != ',')
            throw ParseError(path + ":" + std::to_string(lineno) + ": expected `lon,lat`");
        verts.push_back({lon, lat});
    }
    return PolygonBoundary::from_vertices(std::move(verts));
}

} // namespace meshfree
