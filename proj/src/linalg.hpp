#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

namespace meshfree {

// Unevaluated sum of two doubles (~32 significant digits). Enough headroom to
// solve kernel systems whose condition number exceeds 1/eps_double, which flat
// Gaussian/multiquadric matrices routinely do.
struct DoubleDouble {
    double hi = 0.0;
    double lo = 0.0;

    DoubleDouble() = default;
    DoubleDouble(double h) : hi(h) {}
    DoubleDouble(double h, double l) : hi(h), lo(l) {}

    double to_double() const { return hi + lo; }
};

namespace dd_detail {

inline DoubleDouble two_sum(double a, double b) {
    const double s = a + b;
    const double bb = s - a;
    return {s, (a - (s - bb)) + (b - bb)};
}

inline DoubleDouble quick_two_sum(double a, double b) { // requires |a| >= |b|
    const double s = a + b;
    return {s, b - (s - a)};
}

inline DoubleDouble two_prod(double a, double b) {
    const double p = a * b;
    return {p, std::fma(a, b, -p)};
}

} // namespace dd_detail

inline DoubleDouble operator+(DoubleDouble a, DoubleDouble b) {
    using namespace dd_detail;
    DoubleDouble s = two_sum(a.hi, b.hi);
    return quick_two_sum(s.hi, s.lo + a.lo + b.lo);
}

inline DoubleDouble operator-(DoubleDouble a) { return {-a.hi, -a.lo}; }
inline DoubleDouble operator-(DoubleDouble a, DoubleDouble b) { return a + (-b); }

inline DoubleDouble operator*(DoubleDouble a, DoubleDouble b) {
    using namespace dd_detail;
    DoubleDouble p = two_prod(a.hi, b.hi);
    return quick_two_sum(p.hi, p.lo + a.hi * b.lo + a.lo * b.hi);
}

inline DoubleDouble operator/(DoubleDouble a, DoubleDouble b) {
    using namespace dd_detail;
    const double q1 = a.hi / b.hi;
    DoubleDouble r = a - b * DoubleDouble(q1);
    const double q2 = r.hi / b.hi;
    r = r - b * DoubleDouble(q2);
    const double q3 = r.hi / b.hi;
    DoubleDouble q = quick_two_sum(q1, q2);
    return q + DoubleDouble(q3);
}

inline DoubleDouble& operator+=(DoubleDouble& a, DoubleDouble b) { return a = a + b; }
inline DoubleDouble& operator-=(DoubleDouble& a, DoubleDouble b) { return a = a - b; }
inline DoubleDouble& operator*=(DoubleDouble& a, DoubleDouble b) { return a = a * b; }
inline DoubleDouble& operator/=(DoubleDouble& a, DoubleDouble b) { return a = a / b; }

inline bool operator<(DoubleDouble a, DoubleDouble b) {
    return a.hi < b.hi || (a.hi == b.hi && a.lo < b.lo);
}

inline double abs_value(double x) { return std::abs(x); }
inline double abs_value(DoubleDouble x) { return std::abs(x.to_double()); }
inline double to_plain_double(double x) { return x; }
inline double to_plain_double(DoubleDouble x) { return x.to_double(); }

// Row-major dense square matrix.
template <typename T>
struct DenseMatrix {
    std::size_t n = 0;
    std::vector<T> a;

    explicit DenseMatrix(std::size_t size = 0) : n(size), a(size * size) {}
    T& at(std::size_t i, std::size_t j) { return a[i * n + j]; }
    const T& at(std::size_t i, std::size_t j) const { return a[i * n + j]; }
};

double one_norm(const DenseMatrix<double>& m);
double max_row_one_norm(const DenseMatrix<double>& m);

// In-place LU with partial (row) pivoting. swaps[k] is the row exchanged with
// row k at step k. Returns the smallest |pivot| seen.
template <typename T>
double lu_factor(DenseMatrix<T>& m, std::vector<int>& swaps) {
    const std::size_t n = m.n;
    swaps.assign(n, 0);
    double min_pivot = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        double best = abs_value(m.at(k, k));
        for (std::size_t i = k + 1; i < n; ++i) {
            const double v = abs_value(m.at(i, k));
            if (v > best) {
                best = v;
                piv = i;
            }
        }
        swaps[k] = static_cast<int>(piv);
        if (piv != k)
            for (std::size_t j = 0; j < n; ++j) std::swap(m.at(k, j), m.at(piv, j));
        min_pivot = std::min(min_pivot, best);
        if (best == 0.0) return 0.0;
        const T pivot = m.at(k, k);
        for (std::size_t i = k + 1; i < n; ++i) {
            const T lik = m.at(i, k) / pivot;
            m.at(i, k) = lik;
            T* __restrict__ ri = &m.a[i * n];
            const T* __restrict__ rk = &m.a[k * n];
            for (std::size_t j = k + 1; j < n; ++j) ri[j] -= lik * rk[j];
        }
    }
    return min_pivot;
}

template <typename T>
void lu_solve(const DenseMatrix<T>& lu, const std::vector<int>& swaps, std::vector<T>& b) {
    const std::size_t n = lu.n;
    for (std::size_t k = 0; k < n; ++k)
        if (swaps[k] != static_cast<int>(k)) std::swap(b[k], b[swaps[k]]);
    for (std::size_t i = 1; i < n; ++i) {
        T s = b[i];
        for (std::size_t j = 0; j < i; ++j) s -= lu.at(i, j) * b[j];
        b[i] = s;
    }
    for (std::size_t i = n; i-- > 0;) {
        T s = b[i];
        for (std::size_t j = i + 1; j < n; ++j) s -= lu.at(i, j) * b[j];
        b[i] = s / lu.at(i, i);
    }
}

// Solve A^T x = b given the LU factors of A.
void lu_solve_transpose(const DenseMatrix<double>& lu, const std::vector<int>& swaps,
                        std::vector<double>& b);

// Hager-style 1-norm condition estimate from the factorization.
double condition_estimate_1norm(const DenseMatrix<double>& lu, const std::vector<int>& swaps,
                                double a_norm1);

} // namespace meshfree
