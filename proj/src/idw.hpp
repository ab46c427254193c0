#pragma once

#include <vector>

#include "geometry.hpp"
#include "rbf.hpp"

namespace meshfree {

struct IdwConfig {
    double power = 2.0; // exponent of the distance in the weights
    int k_nearest = 0;  // 0 = use all points
};

// Inverse-distance weighted (gravity) interpolation. A query within 1e-12 of a
// datum returns that datum exactly; output always lies in [min, max] of the
// neighbor-set values.
double idw_interpolate(const ScatterSet& data, const Point2D& query,
                       const IdwConfig& config = {});

std::vector<double> idw_interpolate_many(const ScatterSet& data,
                                         const std::vector<Point2D>& queries,
                                         const IdwConfig& config = {}, int threads = 1);

} // namespace meshfree
