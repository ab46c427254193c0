// Command-line front end; talks to the library through the C API only.

#include <cinttypes>
#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "meshfree/meshfree.h"

namespace {

struct Shared {
    std::uint64_t seed = 42;
    std::string out_dir = "./out";
    int threads = 0;
};

void add_shared(CLI::App* cmd, Shared& s) {
    cmd->add_option("--seed", s.seed, "Random seed")->capture_default_str();
    cmd->add_option("--out", s.out_dir, "Output directory")->capture_default_str();
    cmd->add_option("--threads", s.threads,
                    "Worker thread cap (0 = machine parallelism)")
        ->capture_default_str();
}

const std::vector<std::string> kKernelNames = {"gaussian", "multiquadric",
                                               "inverse-multiquadric", "thin-plate-spline"};

mf_kernel kernel_from_name(const std::string& name) {
    if (name == "gaussian") return MF_KERNEL_GAUSSIAN;
    if (name == "multiquadric") return MF_KERNEL_MULTIQUADRIC;
    if (name == "inverse-multiquadric") return MF_KERNEL_INVERSE_MULTIQUADRIC;
    return MF_KERNEL_THIN_PLATE_SPLINE;
}

struct Methods {
    bool rbf = true;
    bool gravity = true;
};

Methods parse_methods(const std::string& spec) {
    Methods m{false, false};
    std::string cur;
    const auto take = [&](const std::string& name) {
        if (name == "rbf")
            m.rbf = true;
        else if (name == "gravity")
            m.gravity = true;
        else
            throw CLI::ValidationError("--methods",
                                       "unknown method `" + name + "`; valid: rbf, gravity");
    };
    for (char c : spec) {
        if (c == ',') {
            if (!cur.empty()) take(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!cur.empty()) take(cur);
    if (!m.rbf && !m.gravity)
        throw CLI::ValidationError("--methods", "no method selected");
    return m;
}

int report_error(mf_status status) {
    std::fprintf(stderr, "error: %s\n", mf_last_error());
    return status == MF_ERROR_INVALID_ARGUMENT ? 2 : 1;
}

void print_output(const char* path, double min_value, double max_value, void*) {
    std::printf("%s  min=%.4f max=%.4f\n", path, min_value, max_value);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Mesh-free scalar-field interpolation: gravity (1/R^2) model vs "
                 "radial basis functions"};
    app.require_subcommand(1);

    // converge
    Shared conv_shared;
    std::uint64_t n_start = 300, n_end = 3000, step = 300;
    std::string conv_kernel = "multiquadric", conv_methods = "rbf,gravity";
    double conv_epsilon = 1.0, conv_idw_power = 2.0;
    int conv_idw_k = 0;
    bool full_sweep = false;
    CLI::App* converge = app.add_subcommand(
        "converge", "Convergence sweep on the analytic cosine field; writes a CSV");
    add_shared(converge, conv_shared);
    converge->add_option("--n-start", n_start, "First scatter size")->capture_default_str();
    converge->add_option("--n-end", n_end, "Last scatter size")->capture_default_str();
    converge->add_option("--step", step, "Scatter size increment")->capture_default_str();
    converge->add_option("--kernel", conv_kernel, "RBF kernel")
        ->check(CLI::IsMember(kKernelNames))
        ->capture_default_str();
    converge->add_option("--epsilon", conv_epsilon, "Shape parameter (normalized coordinates)")
        ->capture_default_str();
    converge->add_option("--methods", conv_methods, "Comma list of rbf,gravity")
        ->capture_default_str();
    converge->add_option("--idw-power", conv_idw_power, "Gravity-model distance exponent")
        ->capture_default_str();
    converge->add_option("--idw-k", conv_idw_k, "Gravity-model neighbor cap (0 = all points)")
        ->capture_default_str();
    converge->add_flag("--full", full_sweep, "Run the full 300..15000 sweep");

    // case-study
    Shared cs_shared;
    cs_shared.seed = 1;
    std::string stations_path, readings_path, cs_polygon;
    bool synthesize = false;
    int cs_points = 3881;
    int hour = 0;
    std::string hours_range;
    std::string cs_kernel = "multiquadric", cs_methods = "rbf,gravity";
    double cs_epsilon = 1.0, cs_idw_power = 2.0, boundary_spacing = 0.25;
    double lon_step = 0.625, lat_step = 0.5;
    int cs_idw_k = 0;
    CLI::App* case_study = app.add_subcommand(
        "case-study", "Interpolate station temperatures onto a polygon mesh; writes CSV + SVG "
                      "per method and hour");
    add_shared(case_study, cs_shared);
    case_study->add_option("--stations", stations_path, "Stations CSV (station_id,lon,lat)");
    case_study->add_option("--readings", readings_path,
                           "Readings CSV (station_id,hour_index,temperature_f)");
    case_study->add_flag("--synthesize", synthesize, "Generate a synthetic station grid");
    case_study->add_option("--polygon", cs_polygon, "Boundary polygon CSV (lon,lat lines)")
        ->required();
    case_study->add_option("--points", cs_points, "Interior mesh point count")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    case_study->add_option("--hour", hour, "Hour to interpolate (1-based)")
        ->check(CLI::Range(1, 1 << 30));
    case_study->add_option("--hours", hours_range, "Hour range a-b (1-based, inclusive)");
    case_study->add_option("--methods", cs_methods, "Comma list of rbf,gravity")
        ->capture_default_str();
    case_study->add_option("--kernel", cs_kernel, "RBF kernel")
        ->check(CLI::IsMember(kKernelNames))
        ->capture_default_str();
    case_study->add_option("--epsilon", cs_epsilon, "Shape parameter (normalized coordinates)")
        ->capture_default_str();
    case_study->add_option("--idw-power", cs_idw_power, "Gravity-model distance exponent")
        ->capture_default_str();
    case_study->add_option("--idw-k", cs_idw_k, "Gravity-model neighbor cap (0 = all points)")
        ->capture_default_str();
    case_study->add_option("--boundary-spacing", boundary_spacing,
                           "Boundary sample spacing, degrees")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    case_study->add_option("--lon-step", lon_step, "Synthesizer longitude resolution, degrees")
        ->capture_default_str();
    case_study->add_option("--lat-step", lat_step, "Synthesizer latitude resolution, degrees")
        ->capture_default_str();

    // gen-points
    Shared gp_shared;
    gp_shared.seed = 1;
    std::string gp_polygon;
    int gp_count = 3881;
    double gp_spacing = 0.25;
    CLI::App* gen_points = app.add_subcommand(
        "gen-points", "Generate boundary + interior points in a polygon and triangulate them");
    add_shared(gen_points, gp_shared);
    gen_points->add_option("--polygon", gp_polygon, "Boundary polygon CSV (lon,lat lines)")
        ->required();
    gen_points->add_option("--count", gp_count, "Interior point count")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    gen_points->add_option("--spacing", gp_spacing, "Boundary sample spacing")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();

    try {
        app.parse(argc, argv);

        if (converge->parsed()) {
            const Methods m = parse_methods(conv_methods);
            mf_converge_opts opts{};
            opts.n_start = full_sweep ? 300 : n_start;
            opts.n_end = full_sweep ? 15000 : n_end;
            opts.step = full_sweep ? 300 : step;
            opts.seed = conv_shared.seed;
            opts.kernel = kernel_from_name(conv_kernel);
            opts.epsilon = conv_epsilon;
            opts.use_rbf = m.rbf;
            opts.use_gravity = m.gravity;
            opts.idw_power = conv_idw_power;
            opts.idw_k = conv_idw_k;
            opts.threads = conv_shared.threads;
            std::error_code ec;
            std::filesystem::create_directories(conv_shared.out_dir, ec);
            const std::string csv = conv_shared.out_dir + "/convergence.csv";
            int rows = 0, failed = 0;
            double rms_rbf = -1.0, rms_gravity = -1.0;
            const mf_status st =
                mf_run_converge(&opts, csv.c_str(), &rows, &failed, &rms_rbf, &rms_gravity);
            if (st != MF_OK) return report_error(st);
            std::printf("wrote %s (%d rows, %d failed)\n", csv.c_str(), rows, failed);
            if (m.rbf && rms_rbf >= 0.0)
                std::printf("rbf: final RMS %.6e at N=%" PRIu64 "\n", rms_rbf, opts.n_end);
            if (m.gravity && rms_gravity >= 0.0)
                std::printf("gravity: final RMS %.6e at N=%" PRIu64 "\n", rms_gravity,
                            opts.n_end);
            return failed == 0 ? 0 : 1;
        }

        if (case_study->parsed()) {
            const Methods m = parse_methods(cs_methods);
            const bool have_files = !stations_path.empty() || !readings_path.empty();
            if (synthesize == have_files)
                throw CLI::ValidationError(
                    "--stations", "give either --stations with --readings, or --synthesize");
            if ((stations_path.empty()) != (readings_path.empty()))
                throw CLI::ValidationError("--stations",
                                           "--stations and --readings go together");
            int hour_start = 1, hour_end = 1;
            if (hour > 0 && !hours_range.empty())
                throw CLI::ValidationError("--hour", "give --hour or --hours, not both");
            if (hour > 0) {
                hour_start = hour_end = hour;
            } else if (!hours_range.empty()) {
                if (std::sscanf(hours_range.c_str(), "%d-%d", &hour_start, &hour_end) != 2 ||
                    hour_start < 1 || hour_end < hour_start)
                    throw CLI::ValidationError("--hours", "expected a-b with 1 <= a <= b");
            }
            mf_case_study_opts opts{};
            opts.stations_path = stations_path.empty() ? nullptr : stations_path.c_str();
            opts.readings_path = readings_path.empty() ? nullptr : readings_path.c_str();
            opts.polygon_path = cs_polygon.c_str();
            opts.interior_points = cs_points;
            opts.boundary_spacing = boundary_spacing;
            opts.hour_start = hour_start;
            opts.hour_end = hour_end;
            opts.use_rbf = m.rbf;
            opts.use_gravity = m.gravity;
            opts.kernel = kernel_from_name(cs_kernel);
            opts.epsilon = cs_epsilon;
            opts.idw_power = cs_idw_power;
            opts.idw_k = cs_idw_k;
            opts.seed = cs_shared.seed;
            opts.threads = cs_shared.threads;
            opts.out_dir = cs_shared.out_dir.c_str();
            opts.lon_step = lon_step;
            opts.lat_step = lat_step;
            const mf_status st = mf_run_case_study(&opts, print_output, nullptr);
            if (st != MF_OK) return report_error(st);
            return 0;
        }

        // gen-points
        std::error_code ec;
        std::filesystem::create_directories(gp_shared.out_dir, ec);
        const std::string out_path = gp_shared.out_dir + "/points.csv";
        int points = 0, triangles = 0;
        const mf_status st = mf_run_gen_points(gp_polygon.c_str(), gp_count, gp_shared.seed,
                                               gp_spacing, out_path.c_str(), &points,
                                               &triangles);
        if (st != MF_OK) return report_error(st);
        std::printf("wrote %s (%d points, %d triangles)\n", out_path.c_str(), points,
                    triangles);
        return 0;
    } catch (const CLI::CallForHelp& e) {
        app.exit(e);
        return 0;
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }
}
