#include "linalg.hpp"

#include <algorithm>
#include <limits>

namespace meshfree {

double one_norm(const DenseMatrix<double>& m) {
    double best = 0.0;
    for (std::size_t j = 0; j < m.n; ++j) {
        double col = 0.0;
        for (std::size_t i = 0; i < m.n; ++i) col += std::abs(m.at(i, j));
        best = std::max(best, col);
    }
    return best;
}

double max_row_one_norm(const DenseMatrix<double>& m) {
    double best = 0.0;
    for (std::size_t i = 0; i < m.n; ++i) {
        double row = 0.0;
        for (std::size_t j = 0; j < m.n; ++j) row += std::abs(m.at(i, j));
        best = std::max(best, row);
    }
    return best;
}

void lu_solve_transpose(const DenseMatrix<double>& lu, const std::vector<int>& swaps,
                        std::vector<double>& b) {
    const std::size_t n = lu.n;
    // A = P^-1 L U, so A^T x = b means U^T (L^T (P x)) = b.
    for (std::size_t i = 0; i < n; ++i) {
        double s = b[i];
        for (std::size_t j = 0; j < i; ++j) s -= lu.at(j, i) * b[j];
        b[i] = s / lu.at(i, i);
    }
    for (std::size_t i = n; i-- > 0;) {
        double s = b[i];
        for (std::size_t j = i + 1; j < n; ++j) s -= lu.at(j, i) * b[j];
        b[i] = s;
    }
    for (std::size_t k = n; k-- > 0;)
        if (swaps[k] != static_cast<int>(k)) std::swap(b[k], b[swaps[k]]);
}

double condition_estimate_1norm(const DenseMatrix<double>& lu, const std::vector<int>& swaps,
                                double a_norm1) {
    const std::size_t n = lu.n;
    if (n == 0) return 0.0;
    if (n == 1) {
        const double d = std::abs(lu.at(0, 0));
        return d > 0.0 ? a_norm1 / d : std::numeric_limits<double>::infinity();
    }
    std::vector<double> x(n, 1.0 / static_cast<double>(n));
    double inv_norm = 0.0;
    for (int iter = 0; iter < 5; ++iter) {
        std::vector<double> y = x;
        lu_solve(lu, swaps, y);
        double y1 = 0.0;
        for (double v : y) y1 += std::abs(v);
        inv_norm = std::max(inv_norm, y1);
        std::vector<double> z(n);
        for (std::size_t i = 0; i < n; ++i) z[i] = y[i] >= 0.0 ? 1.0 : -1.0;
        lu_solve_transpose(lu, swaps, z);
        std::size_t jmax = 0;
        double zmax = 0.0, zdotx = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            zdotx += z[i] * x[i];
            if (std::abs(z[i]) > zmax) {
                zmax = std::abs(z[i]);
                jmax = i;
            }
        }
        if (zmax <= zdotx) break;
        std::fill(x.begin(), x.end(), 0.0);
        x[jmax] = 1.0;
    }
    return a_norm1 * inv_norm;
}

} // namespace meshfree
