#include "rbf.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <stdexcept>
#include <thread>

#include "errors.hpp"

namespace meshfree {

namespace {

constexpr double kPivotFloorRel = 1e-12;
constexpr double kConditionWarnThreshold = 1e10;

double residual_tolerance(const std::vector<double>& h) {
    double hmax = 0.0;
    for (double v : h) hmax = std::max(hmax, std::abs(v));
    return 1e-6 * (1.0 + hmax);
}

// ||Phi w - h||_inf with the kernel entries recomputed; accumulated in
// DoubleDouble so the check stays meaningful when weights are huge.
double fit_residual_inf(const std::vector<Point2D>& centers_norm, KernelKind kernel,
                        double epsilon, const std::vector<DoubleDouble>& w,
                        const std::vector<double>& h) {
    const std::size_t n = centers_norm.size();
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        DoubleDouble s(0.0);
        for (std::size_t j = 0; j < n; ++j) {
            const double phi = evaluate_kernel(
                kernel, epsilon, euclidean_distance(centers_norm[i], centers_norm[j]));
            s += w[j] * DoubleDouble(phi);
        }
        worst = std::max(worst, std::abs((s - DoubleDouble(h[i])).to_double()));
    }
    return worst;
}

} // namespace

ScatterSet ScatterSet::create(std::vector<Point2D> points, std::vector<double> values,
                              std::string units) {
    if (points.size() != values.size())
        throw std::invalid_argument("points and values lengths differ");
    if (points.empty()) throw std::invalid_argument("scatter set is empty");
    for (const Point2D& p : points)
        if (!std::isfinite(p.x) || !std::isfinite(p.y))
            throw std::invalid_argument("scatter point is not finite");
    for (double v : values)
        if (!std::isfinite(v)) throw std::invalid_argument("scatter value is not finite");
    const std::size_t n = points.size();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double dx = points[i].x - points[j].x;
            const double dy = points[i].y - points[j].y;
            if (dx * dx + dy * dy <= 1e-24)
                throw std::invalid_argument("scatter points " + std::to_string(i) + " and " +
                                            std::to_string(j) + " coincide");
        }
    }
    return {std::move(points), std::move(values), std::move(units)};
}

Normalization Normalization::from_bbox(const std::vector<Point2D>& pts) {
    double minx = pts[0].x, maxx = pts[0].x, miny = pts[0].y, maxy = pts[0].y;
    for (const Point2D& p : pts) {
        minx = std::min(minx, p.x);
        maxx = std::max(maxx, p.x);
        miny = std::min(miny, p.y);
        maxy = std::max(maxy, p.y);
    }
    Normalization n;
    n.x0 = minx;
    n.y0 = miny;
    n.scale_x = (maxx - minx) > 0.0 ? 1.0 / (maxx - minx) : 1.0;
    n.scale_y = (maxy - miny) > 0.0 ? 1.0 / (maxy - miny) : 1.0;
    return n;
}

DenseMatrix<double> assemble_interpolation_matrix(const std::vector<Point2D>& centers,
                                                  KernelKind kernel, double epsilon,
                                                  std::size_t memory_budget_bytes) {
    const std::size_t n = centers.size();
    if (n == 0) throw std::invalid_argument("no centers");
    if (n * n * sizeof(double) > memory_budget_bytes)
        throw std::invalid_argument("interpolation matrix for " + std::to_string(n) +
                                    " centers exceeds the memory budget of " +
                                    std::to_string(memory_budget_bytes) + " bytes");
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (euclidean_distance(centers[i], centers[j]) <= 1e-12)
                throw std::invalid_argument("duplicate centers " + std::to_string(i) + " and " +
                                            std::to_string(j));
    DenseMatrix<double> m(n);
    const double phi0 = evaluate_kernel(kernel, epsilon, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        m.at(i, i) = phi0;
        for (std::size_t j = i + 1; j < n; ++j) {
            const double v =
                evaluate_kernel(kernel, epsilon, euclidean_distance(centers[i], centers[j]));
            m.at(i, j) = v;
            m.at(j, i) = v;
        }
    }
    return m;
}

RbfModel fit(const ScatterSet& data, KernelKind kernel, double epsilon,
             const FitOptions& options) {
    const std::size_t n = data.points.size();
    RbfModel model;
    model.centers = data.points;
    model.kernel = kernel;
    model.epsilon = epsilon;
    model.normalization = Normalization::from_bbox(data.points);

    std::vector<Point2D> centers_norm(n);
    for (std::size_t i = 0; i < n; ++i) centers_norm[i] = model.normalization.apply(data.points[i]);

    DenseMatrix<double> phi =
        assemble_interpolation_matrix(centers_norm, kernel, epsilon, options.memory_budget_bytes);
    const double a_norm1 = one_norm(phi);
    const double pivot_floor = kPivotFloorRel * max_row_one_norm(phi);

    const auto singular_error = [&](double pivot) -> SingularMatrixError {
        std::string hint = kernel == KernelKind::ThinPlateSpline
                               ? "unaugmented thin-plate-spline system is singular"
                               : "duplicate or degenerate center geometry";
        return SingularMatrixError("interpolation matrix is numerically singular (pivot " +
                                   std::to_string(pivot) + " below floor " +
                                   std::to_string(pivot_floor) + "; " + hint + ")");
    };

    DenseMatrix<double> lu = phi;
    std::vector<int> swaps;
    const double min_pivot = lu_factor(lu, swaps);
    if (min_pivot == 0.0) throw singular_error(min_pivot);

    std::vector<double> w = data.values;
    lu_solve(lu, swaps, w);
    model.condition_estimate = condition_estimate_1norm(lu, swaps, a_norm1);
    if (options.warn_on_ill_conditioning && model.condition_estimate > kConditionWarnThreshold)
        std::cerr << "warning: interpolation matrix condition estimate "
                  << model.condition_estimate << " exceeds 1e10 (kernel " << kernel_name(kernel)
                  << ", n=" << n << ")\n";

    model.weights.assign(n, DoubleDouble(0.0));
    for (std::size_t i = 0; i < n; ++i) model.weights[i] = DoubleDouble(w[i]);
    model.fit_residual = fit_residual_inf(centers_norm, kernel, epsilon, model.weights, data.values);

    const double tol = residual_tolerance(data.values);
    if (model.fit_residual > tol && n <= options.refine_max_n) {
        // Double precision cannot express weights accurate enough for flat
        // kernels; re-factor the same double-rounded matrix in DoubleDouble.
        DenseMatrix<DoubleDouble> phi_dd(n);
        for (std::size_t i = 0; i < n * n; ++i) phi_dd.a[i] = DoubleDouble(phi.a[i]);
        std::vector<int> swaps_dd;
        lu_factor(phi_dd, swaps_dd);
        std::vector<DoubleDouble> w_dd(n);
        for (std::size_t i = 0; i < n; ++i) w_dd[i] = DoubleDouble(data.values[i]);
        lu_solve(phi_dd, swaps_dd, w_dd);
        model.weights = std::move(w_dd);
        model.extended_precision = true;
        model.fit_residual =
            fit_residual_inf(centers_norm, kernel, epsilon, model.weights, data.values);
    }
    // A sub-floor pivot alone does not prove singularity for flat kernels;
    // only a garbage solve does. Ill-conditioned fits that miss the strict
    // tolerance are kept and reported through fit_residual / the warning.
    double hmax = 0.0;
    for (double v : data.values) hmax = std::max(hmax, std::abs(v));
    if (min_pivot < pivot_floor && model.fit_residual > 1e-2 * (1.0 + hmax))
        throw singular_error(min_pivot);
    return model;
}

double predict(const RbfModel& model, const Point2D& query) {
    const Point2D q = model.normalization.apply(query);
    DoubleDouble s(0.0);
    for (std::size_t i = 0; i < model.centers.size(); ++i) {
        const Point2D c = model.normalization.apply(model.centers[i]);
        const double phi = evaluate_kernel(model.kernel, model.epsilon, euclidean_distance(q, c));
        s += model.weights[i] * DoubleDouble(phi);
    }
    return s.to_double();
}

std::vector<double> predict_many(const RbfModel& model, const std::vector<Point2D>& queries,
                                 int threads) {
    std::vector<double> out(queries.size());
    if (threads <= 0) threads = static_cast<int>(std::thread::hardware_concurrency());
    if (threads < 1) threads = 1;
    const std::size_t nq = queries.size();
    if (threads == 1 || nq < 64) {
        for (std::size_t i = 0; i < nq; ++i) out[i] = predict(model, queries[i]);
        return out;
    }
    std::vector<std::thread> pool;
    const std::size_t chunk = (nq + threads - 1) / threads;
    for (int t = 0; t < threads; ++t) {
        const std::size_t lo = t * chunk;
        const std::size_t hi = std::min(nq, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([&, lo, hi] {
            for (std::size_t i = lo; i < hi; ++i) out[i] = predict(model, queries[i]);
        });
    }
    for (auto& th : pool) th.join();
    return out;
}

} // namespace meshfree
