#include "runner.hpp"

#include <filesystem>
#include <stdexcept>

#include "errors.hpp"
#include "io_util.hpp"

namespace meshfree {

ConvergeResult run_converge(const ConvergenceOptions& options, const std::string& csv_path) {
    ConvergeResult result;
    result.rows = run_convergence_study(options);
    for (const ConvergenceRow& r : result.rows)
        if (r.failed) ++result.failed_rows;
    write_convergence_csv(result.rows, csv_path);
    return result;
}

std::vector<CaseStudyOutput> run_case_study(const CaseStudyOptions& opt) {
    if (opt.hour_start < 1 || opt.hour_end < opt.hour_start)
        throw std::invalid_argument("invalid hour range");
    if (opt.interior_points < 1) throw std::invalid_argument("interior point count must be >= 1");
    if (opt.stations_path.has_value() != opt.readings_path.has_value())
        throw std::invalid_argument("--stations and --readings must be given together");

    const PolygonBoundary poly = load_polygon_csv(opt.polygon_path);

    std::vector<StationRecord> stations;
    if (opt.stations_path) {
        std::vector<std::string> warnings;
        stations = load_stations(*opt.stations_path, *opt.readings_path, &warnings);
        for (const std::string& w : warnings) std::fprintf(stderr, "warning: %s\n", w.c_str());
    } else {
        stations = synthesize_stations(poly, opt.lon_step, opt.lat_step, opt.hour_end, opt.seed);
    }

    std::vector<Point2D> mesh_points = generate_boundary_points(poly, opt.boundary_spacing);
    const std::vector<Point2D> interior =
        generate_interior_points(poly, static_cast<std::size_t>(opt.interior_points), opt.seed);
    mesh_points.insert(mesh_points.end(), interior.begin(), interior.end());
    const TriangleMesh mesh = triangulate(mesh_points);

    std::filesystem::create_directories(opt.out_dir);

    std::vector<std::pair<std::string, InterpolationMethod>> methods;
    if (opt.methods.rbf)
        methods.emplace_back("rbf", RbfMethod{opt.kernel, opt.epsilon});
    if (opt.methods.gravity) methods.emplace_back("gravity", opt.idw);
    if (methods.empty()) throw std::invalid_argument("no interpolation method selected");

    std::vector<CaseStudyOutput> outputs;
    for (int hour = opt.hour_start; hour <= opt.hour_end; ++hour) {
        for (const auto& [name, method] : methods) {
            ScalarField field =
                interpolate_hour(stations, hour, method, mesh_points, opt.threads);
            field.mesh = mesh;
            double vmin = field.values[0], vmax = field.values[0];
            for (double v : field.values) {
                vmin = std::min(vmin, v);
                vmax = std::max(vmax, v);
            }
            const std::string stem =
                opt.out_dir + "/" + name + "_hour" + std::to_string(hour);
            export_field_csv(field, stem + ".csv");
            outputs.push_back({stem + ".csv", vmin, vmax});
            render_contour_svg(field, default_contour_levels(field), poly, stem + ".svg");
            outputs.push_back({stem + ".svg", vmin, vmax});
        }
    }
    return outputs;
}

GenPointsResult run_gen_points(const std::string& polygon_path, int interior_count,
                               std::uint64_t seed, double boundary_spacing,
                               const std::string& out_path) {
    const PolygonBoundary poly = load_polygon_csv(polygon_path);
    std::vector<Point2D> points = generate_boundary_points(poly, boundary_spacing);
    const std::vector<Point2D> interior =
        generate_interior_points(poly, static_cast<std::size_t>(interior_count), seed);
    points.insert(points.end(), interior.begin(), interior.end());
    const TriangleMesh mesh = triangulate(points);

    std::string out = "# points\nx,y\n";
    for (const Point2D& p : mesh.points) {
        out += format_double(p.x);
        out += ',';
        out += format_double(p.y);
        out += '\n';
    }
    out += "# triangles\na,b,c\n";
    for (const auto& t : mesh.triangles) {
        out += std::to_string(t[0]);
        out += ',';
        out += std::to_string(t[1]);
        out += ',';
        out += std::to_string(t[2]);
        out += '\n';
    }
    atomic_write_file(out_path, out);
    return {static_cast<int>(mesh.points.size()), static_cast<int>(mesh.triangles.size())};
}

} // namespace meshfree
