#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "geometry.hpp"
#include "kernels.hpp"
#include "linalg.hpp"

namespace meshfree {

// Scattered samples: one scalar value per distinct point.
struct ScatterSet {
    std::vector<Point2D> points;
    std::vector<double> values;
    std::string units; // "" for unitless benchmark data, "F" for temperature

    // Validates: equal lengths >= 1, finite values/coordinates, pairwise
    // point distances > 1e-12.
    static ScatterSet create(std::vector<Point2D> points, std::vector<double> values,
                             std::string units = "");
};

// Affine map onto the unit square of the data's bounding box; the shape
// parameter is interpreted in that space.
struct Normalization {
    double x0 = 0.0, y0 = 0.0;
    double scale_x = 1.0, scale_y = 1.0;

    static Normalization from_bbox(const std::vector<Point2D>& pts);
    Point2D apply(const Point2D& p) const { return {(p.x - x0) * scale_x, (p.y - y0) * scale_y}; }
};

struct RbfModel {
    std::vector<Point2D> centers; // original coordinates
    std::vector<DoubleDouble> weights;
    KernelKind kernel = KernelKind::Multiquadric;
    double epsilon = 1.0;
    Normalization normalization;
    double fit_residual = 0.0;       // ||Phi w - h||_inf at fit time
    double condition_estimate = 0.0; // 1-norm estimate from the factorization
    bool extended_precision = false; // true when the fit escalated to DoubleDouble
};

struct FitOptions {
    // Systems up to this size are re-factored in DoubleDouble when the plain
    // double residual misses the tolerance.
    std::size_t refine_max_n = 1024;
    std::size_t memory_budget_bytes = std::size_t{4} << 30;
    bool warn_on_ill_conditioning = true;
};

// Entry (i,j) = phi(||x_j - x_i||) over the centers as given (no normalization).
DenseMatrix<double> assemble_interpolation_matrix(const std::vector<Point2D>& centers,
                                                  KernelKind kernel, double epsilon,
                                                  std::size_t memory_budget_bytes =
                                                      std::size_t{4} << 30);

// Solve Phi w = h by dense LU with row pivoting. Throws SingularMatrixError
// when a pivot falls below 1e-12 * (max row 1-norm).
RbfModel fit(const ScatterSet& data, KernelKind kernel, double epsilon,
             const FitOptions& options = {});

double predict(const RbfModel& model, const Point2D& query);
std::vector<double> predict_many(const RbfModel& model, const std::vector<Point2D>& queries,
                                 int threads = 1);

} // namespace meshfree
