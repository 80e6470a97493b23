#pragma once

#include "ial/core.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace ial {

// Nearest-neighbor order of a point set around a query. Indices are 0-based
// positions in the point set; ties in distance go to the smaller index.
struct NeighborOrder {
    std::vector<std::size_t> permutation;
    std::vector<double> distances;
};

NeighborOrder nn_order(std::span<const double> query, const PointView& points, Norm metric);

// Indices of the k nearest points, nearest first, same tie rule as nn_order.
std::vector<std::size_t> nearest_indices(std::span<const double> query, const PointView& points,
                                         std::size_t k, Norm metric);

// Mean response over the k nearest covariates to `query`.
// Throws std::invalid_argument("k out of range") unless 1 <= k <= n.
double knn_regress(std::span<const double> query, const Dataset& data, std::size_t k, Norm metric);

} // namespace ial
