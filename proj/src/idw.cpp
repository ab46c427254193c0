#include "idw.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace meshfree {

namespace {
constexpr double kCoincidenceTol = 1e-12;
}

double idw_interpolate(const ScatterSet& data, const Point2D& query, const IdwConfig& config) {
    const std::size_t n = data.points.size();
    if (n == 0) throw std::invalid_argument("scatter set is empty");
    if (!(config.power > 0.0)) throw std::invalid_argument("idw power must be positive");
    if (config.k_nearest < 0) throw std::invalid_argument("k_nearest must be >= 1 (or 0 for all)");

    std::vector<std::size_t> neighbors;
    if (config.k_nearest > 0 && static_cast<std::size_t>(config.k_nearest) < n) {
        // Distance ties break toward the lower point index.
        std::vector<std::pair<double, std::size_t>> order(n);
        for (std::size_t i = 0; i < n; ++i)
            order[i] = {euclidean_distance(data.points[i], query), i};
        std::partial_sort(order.begin(), order.begin() + config.k_nearest, order.end());
        for (int i = 0; i < config.k_nearest; ++i) neighbors.push_back(order[i].second);
    } else {
        neighbors.resize(n);
        for (std::size_t i = 0; i < n; ++i) neighbors[i] = i;
    }

    double num = 0.0, den = 0.0;
    for (std::size_t i : neighbors) {
        const double d = euclidean_distance(data.points[i], query);
        if (d <= kCoincidenceTol) return data.values[i];
        const double w = 1.0 / std::pow(d, config.power);
        num += data.values[i] * w;
        den += w;
    }
    return num / den;
}

std::vector<double> idw_interpolate_many(const ScatterSet& data,
                                         const std::vector<Point2D>& queries,
                                         const IdwConfig& config, int threads) {
    if (data.points.empty()) throw std::invalid_argument("scatter set is empty");
    std::vector<double> out(queries.size());
    if (threads <= 0) threads = static_cast<int>(std::thread::hardware_concurrency());
    if (threads < 1) threads = 1;
    const std::size_t nq = queries.size();
    if (threads == 1 || nq < 64) {
        for (std::size_t i = 0; i < nq; ++i) out[i] = idw_interpolate(data, queries[i], config);
        return out;
    }
    std::vector<std::thread> pool;
    const std::size_t chunk = (nq + threads - 1) / threads;
    for (int t = 0; t < threads; ++t) {
        const std::size_t lo = t * chunk;
        const std::size_t hi = std::min(nq, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([&, lo, hi] {
            for (std::size_t i = lo; i < hi; ++i) out[i] = idw_interpolate(data, queries[i], config);
        });
    }
    for (auto& th : pool) th.join();
    return out;
}

} // namespace meshfree
