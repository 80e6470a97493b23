#include "ial/knn.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

namespace ial {

namespace {

using Candidate = std::pair<double, std::size_t>;

std::vector<Candidate> distances_to(std::span<const double> query, const PointView& points, Norm metric)
{
    if (points.count == 0) throw std::invalid_argument("no points");
    if (query.size() != points.dim) throw std::invalid_argument("query dimension does not match points");
    std::vector<Candidate> out(points.count);
    for (std::size_t i = 0; i < points.count; ++i) out[i] = {distance(query, points[i], metric), i};
    return out;
}

} // namespace

NeighborOrder nn_order(std::span<const double> query, const PointView& points, Norm metric)
{
    auto cands = distances_to(query, points, metric);
    std::sort(cands.begin(), cands.end());
    NeighborOrder order;
    order.permutation.reserve(cands.size());
    order.distances.reserve(cands.size());
    for (const auto& [d, i] : cands) {
        order.permutation.push_back(i);
        order.distances.push_back(d);
    }
    return order;
}

std::vector<std::size_t> nearest_indices(std::span<const double> query, const PointView& points,
                                         std::size_t k, Norm metric)
{
    if (k < 1 || k > points.count) throw std::invalid_argument("k out of range");
    auto cands = distances_to(query, points, metric);
    // Pairs compare lexicographically, which is exactly the index tie-break.
    const auto kth = cands.begin() + static_cast<std::ptrdiff_t>(k);
    if (kth != cands.end()) std::nth_element(cands.begin(), kth - 1, cands.end());
    std::sort(cands.begin(), kth);
    std::vector<std::size_t> out(k);
    for (std::size_t j = 0; j < k; ++j) out[j] = cands[j].second;
    return out;
}

double knn_regress(std::span<const double> query, const Dataset& data, std::size_t k, Norm metric)
{
    if (k < 1 || k > data.size()) throw std::invalid_argument("k out of range");
    const auto idx = nearest_indices(query, data.covariates(), k, metric);
    double sum = 0.0;
    for (std::size_t i : idx) sum += data.y(i);
    return sum / static_cast<double>(k);
}

} // namespace ial
