#include "bench.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <thread>

#include "io_util.hpp"

namespace meshfree {

namespace {

double uniform_unit(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

} // namespace

double analytic_field(double x, double y) {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    return 2.0 + 0.2 * std::cos(two_pi * x) * std::cos(two_pi * y);
}

std::vector<GridPoint> make_eval_grid() {
    std::vector<GridPoint> grid;
    grid.reserve(81);
    for (int iy = 0; iy <= 8; ++iy) {
        for (int ix = 0; ix <= 8; ++ix) {
            const double x = ix * 0.125, y = iy * 0.125;
            grid.push_back({{x, y}, analytic_field(x, y)});
        }
    }
    return grid;
}

ScatterSet sample_random_scatter(std::size_t n, std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("n must be >= 1");
    std::mt19937_64 rng(seed);
    std::vector<Point2D> pts;
    std::vector<double> vals;
    pts.reserve(n);
    vals.reserve(n);
    while (pts.size() < n) {
        const Point2D p{uniform_unit(rng), uniform_unit(rng)};
        bool dup = false;
        for (const Point2D& q : pts) {
            const double dx = p.x - q.x, dy = p.y - q.y;
            if (dx * dx + dy * dy <= 1e-24) {
                dup = true;
                break;
            }
        }
        if (dup) continue;
        pts.push_back(p);
        vals.push_back(analytic_field(p.x, p.y));
    }
    return ScatterSet{std::move(pts), std::move(vals), ""};
}

double rms_error(const std::vector<double>& predicted, const std::vector<double>& truth) {
    if (predicted.size() != truth.size())
        throw std::invalid_argument("rms_error: length mismatch (" +
                                    std::to_string(predicted.size()) + " vs " +
                                    std::to_string(truth.size()) + ")");
    if (predicted.empty()) throw std::invalid_argument("rms_error: empty sequences");
    double acc = 0.0;
    for (std::size_t i = 0; i < predicted.size(); ++i) {
        const double d = predicted[i] - truth[i];
        acc += d * d;
    }
    return std::sqrt(acc / static_cast<double>(predicted.size()));
}

namespace {

ConvergenceRow run_one_row(std::size_t n, const ConvergenceOptions& opt,
                           const std::vector<Point2D>& grid_points,
                           const std::vector<double>& grid_truth) {
    ConvergenceRow row;
    row.n_points = n;
    row.seed = opt.seed;
    row.kernel = opt.kernel;
    row.epsilon = opt.epsilon;
    try {
        const ScatterSet data = sample_random_scatter(n, opt.seed ^ n);
        if (opt.methods.rbf) {
            const auto t0 = std::chrono::steady_clock::now();
            const RbfModel model = fit(data, opt.kernel, opt.epsilon);
            row.fit_seconds = seconds_since(t0);
            const auto t1 = std::chrono::steady_clock::now();
            row.rms_rbf = rms_error(predict_many(model, grid_points, 1), grid_truth);
            row.eval_seconds += seconds_since(t1);
        }
        if (opt.methods.gravity) {
            const auto t0 = std::chrono::steady_clock::now();
            row.rms_gravity = rms_error(idw_interpolate_many(data, grid_points, opt.idw, 1),
                                        grid_truth);
            row.eval_seconds += seconds_since(t0);
        }
    } catch (const std::exception& e) {
        row.failed = true;
        row.error = e.what();
        row.rms_rbf.reset();
        row.rms_gravity.reset();
    }
    return row;
}

} // namespace

std::vector<ConvergenceRow> run_convergence_study(const ConvergenceOptions& opt) {
    if (opt.n_start < 1 || opt.n_start > opt.n_end || opt.step < 1)
        throw std::invalid_argument("invalid sweep bounds");
    std::vector<std::size_t> sizes;
    for (std::size_t n = opt.n_start; n <= opt.n_end; n += opt.step) sizes.push_back(n);

    const auto grid = make_eval_grid();
    std::vector<Point2D> grid_points(grid.size());
    std::vector<double> grid_truth(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        grid_points[i] = grid[i].p;
        grid_truth[i] = grid[i].value;
    }

    std::vector<ConvergenceRow> rows(sizes.size());
    int threads = opt.threads > 0 ? opt.threads
                                  : static_cast<int>(std::thread::hardware_concurrency());
    if (threads < 1) threads = 1;
    // Large rows run sequentially so concurrent dense matrices cannot blow the
    // memory budget.
    if (threads == 1 || opt.n_end > 4000) {
        for (std::size_t i = 0; i < sizes.size(); ++i)
            rows[i] = run_one_row(sizes[i], opt, grid_points, grid_truth);
        return rows;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    const int workers = std::min<int>(threads, static_cast<int>(sizes.size()));
    for (int t = 0; t < workers; ++t) {
        pool.emplace_back([&] {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= sizes.size()) return;
                rows[i] = run_one_row(sizes[i], opt, grid_points, grid_truth);
            }
        });
    }
    for (auto& th : pool) th.join();
    return rows;
}

std::string convergence_csv(const std::vector<ConvergenceRow>& rows) {
    std::string out = "n_points,rms_rbf,rms_gravity,fit_seconds,eval_seconds,seed,kernel,epsilon\n";
    for (const ConvergenceRow& r : rows) {
        out += std::to_string(r.n_points);
        out += ',';
        if (r.rms_rbf) out += format_double(*r.rms_rbf);
        out += ',';
        if (r.rms_gravity) out += format_double(*r.rms_gravity);
        out += ',';
        out += format_double(r.fit_seconds);
        out += ',';
        out += format_double(r.eval_seconds);
        out += ',';
        out += std::to_string(r.seed);
        out += ',';
        out += kernel_name(r.kernel);
        out += ',';
        out += format_double(r.epsilon);
        out += '\n';
    }
    return out;
}

void write_convergence_csv(const std::vector<ConvergenceRow>& rows, const std::string& path) {
    atomic_write_file(path, convergence_csv(rows));
}

} // namespace meshfree
