#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "idw.hpp"
#include "kernels.hpp"
#include "rbf.hpp"

namespace meshfree {

// 2 + 0.2 cos(2 pi x) cos(2 pi y)
double analytic_field(double x, double y);

struct GridPoint {
    Point2D p;
    double value;
};

// The 9x9 evaluation grid on [0,1]^2 at spacing 0.125, row-major (y outer).
std::vector<GridPoint> make_eval_grid();

// n uniform points on [0,1]^2 valued by the analytic field; draws closer than
// 1e-12 to an earlier point are redrawn.
ScatterSet sample_random_scatter(std::size_t n, std::uint64_t seed);

double rms_error(const std::vector<double>& predicted, const std::vector<double>& truth);

struct MethodSelection {
    bool rbf = true;
    bool gravity = true;
};

struct ConvergenceRow {
    std::size_t n_points = 0;
    std::optional<double> rms_rbf;
    std::optional<double> rms_gravity;
    double fit_seconds = 0.0;
    double eval_seconds = 0.0;
    std::uint64_t seed = 0;
    KernelKind kernel = KernelKind::Multiquadric;
    double epsilon = 1.0;
    bool failed = false;
    std::string error;
};

struct ConvergenceOptions {
    std::size_t n_start = 300;
    std::size_t n_end = 3000;
    std::size_t step = 300;
    std::uint64_t seed = 42;
    KernelKind kernel = KernelKind::Multiquadric;
    double epsilon = 1.0;
    MethodSelection methods;
    int threads = 0; // 0 = machine parallelism
    IdwConfig idw;
};

// One row per N in the arithmetic sequence; the scatter for row N is drawn
// with seed ^ N. A failed fit marks the row and the sweep continues.
std::vector<ConvergenceRow> run_convergence_study(const ConvergenceOptions& options);

// Header: n_points,rms_rbf,rms_gravity,fit_seconds,eval_seconds,seed,kernel,epsilon
std::string convergence_csv(const std::vector<ConvergenceRow>& rows);
void write_convergence_csv(const std::vector<ConvergenceRow>& rows, const std::string& path);

} // namespace meshfree
