#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "idw.hpp"
#include "oracles.hpp"

using namespace meshfree;

namespace {

double uniform(std::mt19937_64& rng) { return (rng() >> 11) * 0x1.0p-53; }

ScatterSet random_scatter(std::size_t n, unsigned long long seed) {
    std::mt19937_64 rng(seed);
    std::vector<Point2D> pts;
    std::vector<double> vals;
    for (std::size_t i = 0; i < n; ++i) {
        pts.push_back({uniform(rng) * 4 - 2, uniform(rng) * 4 - 2});
        vals.push_back(uniform(rng) * 50 + 10);
    }
    return ScatterSet::create(std::move(pts), std::move(vals));
}

} // namespace

TEST_CASE("query on a datum returns it exactly") {
    const ScatterSet data = ScatterSet::create({{0, 0}, {1, 1}}, {7.3, -2.0});
    CHECK(idw_interpolate(data, {0, 0}) == 7.3);
    CHECK(idw_interpolate(data, {1.0 + 5e-13, 1.0}) == -2.0); // within the snap radius
}

TEST_CASE("equidistant data average evenly") {
    const ScatterSet data = ScatterSet::create({{-1, 0}, {1, 0}}, {1.0, 3.0});
    CHECK(idw_interpolate(data, {0, 0}) == doctest::Approx(2.0).epsilon(1e-15));
    // power doesn't matter when the distances are equal
    CHECK(idw_interpolate(data, {0, 0.5}, {4.0, 0}) == doctest::Approx(2.0).epsilon(1e-15));
}

TEST_CASE("hand-computed two-point example") {
    // d1 = 1, d2 = 3; weights 1 and 1/9; value = (0 + 10/9)/(1 + 1/9) = 1
    const ScatterSet data = ScatterSet::create({{0, 0}, {4, 0}}, {0.0, 10.0});
    CHECK(idw_interpolate(data, {1, 0}) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("k-nearest restriction") {
    const ScatterSet data = ScatterSet::create({{0, 0}, {1, 0}, {10, 0}}, {1.0, 5.0, 100.0});
    // k=1 just returns the nearest value
    CHECK(idw_interpolate(data, {0.1, 0}, {2.0, 1}) == 1.0);
    // k=2 ignores the far outlier entirely
    const double two = idw_interpolate(data, {0.4, 0}, {2.0, 2});
    const double all = idw_interpolate(data, {0.4, 0});
    CHECK(two < all);
    CHECK(two == doctest::Approx((1.0 / 0.16 + 5.0 / 0.36) / (1.0 / 0.16 + 1.0 / 0.36))
                     .epsilon(1e-14));
    // k larger than n behaves like all points
    CHECK(idw_interpolate(data, {0.4, 0}, {2.0, 50}) == all);
}

TEST_CASE("k-nearest breaks distance ties toward the lower index") {
    const ScatterSet data = ScatterSet::create({{-1, 0}, {1, 0}, {5, 5}}, {10.0, 20.0, 0.0});
    // both candidates at distance 1; index 0 must win
    CHECK(idw_interpolate(data, {0, 0}, {2.0, 1}) == 10.0);
}

TEST_CASE("matches a quad-precision recomputation") {
    const ScatterSet data = random_scatter(60, 17);
    std::vector<double> xs, ys;
    for (const Point2D& p : data.points) {
        xs.push_back(p.x);
        ys.push_back(p.y);
    }
    std::mt19937_64 rng(18);
    for (int i = 0; i < 50; ++i) {
        const double qx = uniform(rng) * 4 - 2, qy = uniform(rng) * 4 - 2;
        const double expect = oracles::idw_power2(xs, ys, data.values, qx, qy);
        CHECK(idw_interpolate(data, {qx, qy}) == doctest::Approx(expect).epsilon(1e-13));
    }
}

TEST_CASE("output respects the data range") {
    const ScatterSet data = random_scatter(40, 3);
    const double lo = *std::min_element(data.values.begin(), data.values.end());
    const double hi = *std::max_element(data.values.begin(), data.values.end());
    std::mt19937_64 rng(4);
    for (int i = 0; i < 200; ++i) {
        const double v =
            idw_interpolate(data, {uniform(rng) * 8 - 4, uniform(rng) * 8 - 4});
        CHECK(v >= lo - 1e-12);
        CHECK(v <= hi + 1e-12);
    }
}

TEST_CASE("constant data give a constant field; shifts pass through") {
    std::mt19937_64 rng(6);
    std::vector<Point2D> pts;
    for (int i = 0; i < 25; ++i) pts.push_back({uniform(rng), uniform(rng)});
    const ScatterSet flat = ScatterSet::create(pts, std::vector<double>(25, 4.25));
    std::vector<double> shifted_vals(25);
    const ScatterSet base = random_scatter(25, 7);
    for (int i = 0; i < 25; ++i) shifted_vals[i] = base.values[i] + 11.5;
    const ScatterSet shifted = ScatterSet::create(base.points, shifted_vals);
    for (int i = 0; i < 50; ++i) {
        const Point2D q{uniform(rng) * 2 - 0.5, uniform(rng) * 2 - 0.5};
        CHECK(idw_interpolate(flat, q) == doctest::Approx(4.25).epsilon(1e-14));
        CHECK(idw_interpolate(shifted, q) ==
              doctest::Approx(idw_interpolate(base, q) + 11.5).epsilon(1e-12));
    }
}

TEST_CASE("weights scale with the chosen power") {
    // d1 = 1, d2 = 2; p = 1 gives (0*1 + 10*0.5)/1.5 = 10/3
    const ScatterSet data = ScatterSet::create({{0, 0}, {3, 0}}, {0.0, 10.0});
    CHECK(idw_interpolate(data, {1, 0}, {1.0, 0}) ==
          doctest::Approx(10.0 / 3.0).epsilon(1e-14));
    // p = 4 gives (0 + 10/16)/(1 + 1/16) = 10/17
    CHECK(idw_interpolate(data, {1, 0}, {4.0, 0}) ==
          doctest::Approx(10.0 / 17.0).epsilon(1e-14));
}

TEST_CASE("batch interpolation matches scalar, threaded or not") {
    const ScatterSet data = random_scatter(30, 12);
    std::mt19937_64 rng(13);
    std::vector<Point2D> queries;
    for (int i = 0; i < 100; ++i) queries.push_back({uniform(rng) * 4 - 2, uniform(rng) * 4 - 2});
    const auto serial = idw_interpolate_many(data, queries, {}, 1);
    const auto threaded = idw_interpolate_many(data, queries, {}, 3);
    REQUIRE(serial.size() == queries.size());
    for (std::size_t i = 0; i < queries.size(); ++i) {
        CHECK(serial[i] == idw_interpolate(data, queries[i]));
        CHECK(threaded[i] == serial[i]);
    }
}

TEST_CASE("configuration validation") {
    const ScatterSet data = ScatterSet::create({{0, 0}}, {1.0});
    CHECK_THROWS_AS(idw_interpolate(data, {1, 1}, {0.0, 0}), std::invalid_argument);
    CHECK_THROWS_AS(idw_interpolate(data, {1, 1}, {-2.0, 0}), std::invalid_argument);
    CHECK_THROWS_AS(idw_interpolate(data, {1, 1}, {2.0, -1}), std::invalid_argument);
}
