#include "ial/cross_validation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

namespace ial {

std::vector<std::int64_t> power_of_two_grid(std::int64_t max_value)
{
    std::vector<std::int64_t> grid{1};
    while (grid.back() * 2 <= max_value) grid.push_back(grid.back() * 2);
    return grid;
}

std::vector<std::int64_t> default_k_grid(std::int64_t n)
{
    return power_of_two_grid(n / 2);
}

std::vector<std::int64_t> default_ell_grid(std::int64_t n)
{
    const std::int64_t m = n / 2;
    auto root = static_cast<std::int64_t>(std::sqrt(static_cast<double>(m)));
    while ((root + 1) * (root + 1) <= m) ++root;
    while (root * root > m) --root;
    return power_of_two_grid(root);
}

std::vector<std::size_t> make_folds(std::size_t n, std::size_t folds, RngStream& rng)
{
    if (folds < 2) throw std::invalid_argument("need at least 2 folds");
    if (n < folds) throw std::invalid_argument("fewer points than folds");
    std::vector<std::size_t> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = i;
    for (std::size_t i = n - 1; i > 0; --i) std::swap(perm[i], perm[rng.uniform_index(i + 1)]);

    std::vector<std::size_t> fold_of(n);
    std::size_t pos = 0;
    for (std::size_t f = 0; f < folds; ++f) {
        const std::size_t len = n / folds + (f < n % folds ? 1 : 0);
        for (std::size_t j = 0; j < len; ++j) fold_of[perm[pos++]] = f;
    }
    return fold_of;
}

std::vector<std::optional<double>> cv_scores(const Dataset& data, std::span<const std::int64_t> grid,
                                             std::span<const std::size_t> fold_of, std::size_t folds,
                                             Norm metric)
{
    const std::size_t n = data.size();
    if (grid.empty()) throw std::invalid_argument("empty grid");
    if (fold_of.size() != n) throw std::invalid_argument("fold labelling does not match dataset");
    if (folds < 2) throw std::invalid_argument("need at least 2 folds");

    std::vector<std::size_t> fold_size(folds, 0);
    for (std::size_t f : fold_of) {
        if (f >= folds) throw std::invalid_argument("fold label out of range");
        ++fold_size[f];
    }
    const std::size_t min_train = n - *std::max_element(fold_size.begin(), fold_size.end());

    std::int64_t k_max = 0;
    for (std::int64_t k : grid) {
        if (k < 1) throw std::invalid_argument("grid values must be positive");
        if (static_cast<std::size_t>(k) <= min_train) k_max = std::max(k_max, k);
    }
    std::vector<std::optional<double>> scores(grid.size());
    if (k_max == 0) return scores;
    const auto kmax = static_cast<std::size_t>(k_max);

    std::vector<double> sse(grid.size(), 0.0);
    std::vector<std::size_t> train;
    std::vector<std::pair<double, std::size_t>> cand;
    std::vector<double> prefix(kmax + 1);
    train.reserve(n);
    cand.reserve(n);

    for (std::size_t f = 0; f < folds; ++f) {
        train.clear();
        for (std::size_t i = 0; i < n; ++i)
            if (fold_of[i] != f) train.push_back(i);
        for (std::size_t h = 0; h < n; ++h) {
            if (fold_of[h] != f) continue;
            const auto query = data.x(h);
            cand.resize(train.size());
            // Positions in `train` ascend with original index, so the pair
            // order reproduces the smallest-index tie-break.
            for (std::size_t p = 0; p < train.size(); ++p) cand[p] = {distance(query, data.x(train[p]), metric), p};
            const auto kth = cand.begin() + static_cast<std::ptrdiff_t>(kmax);
            if (kth != cand.end()) std::nth_element(cand.begin(), kth - 1, cand.end());
            std::sort(cand.begin(), kth);
            prefix[0] = 0.0;
            for (std::size_t j = 0; j < kmax; ++j) prefix[j + 1] = prefix[j] + data.y(train[cand[j].second]);
            for (std::size_t g = 0; g < grid.size(); ++g) {
                const auto k = static_cast<std::size_t>(grid[g]);
                if (k > kmax) continue;
                const double err = prefix[k] / static_cast<double>(k) - data.y(h);
                sse[g] += err * err;
            }
        }
    }
    for (std::size_t g = 0; g < grid.size(); ++g)
        if (grid[g] <= k_max) scores[g] = sse[g] / static_cast<double>(n);
    return scores;
}

std::int64_t cv_select_k(const Dataset& data, std::span<const std::int64_t> grid, std::size_t folds, Norm metric,
                         RngStream& rng)
{
    if (grid.empty()) throw std::invalid_argument("empty grid");
    const auto fold_of = make_folds(data.size(), folds, rng);
    const auto scores = cv_scores(data, grid, fold_of, folds, metric);
    std::optional<std::int64_t> best;
    double best_score = 0.0;
    for (std::size_t g = 0; g < grid.size(); ++g) {
        if (!scores[g]) continue;
        if (!best || *scores[g] < best_score || (*scores[g] == best_score && grid[g] < *best)) {
            best = grid[g];
            best_score = *scores[g];
        }
    }
    if (!best) throw std::invalid_argument("every k in the grid exceeds the training fold size");
    return *best;
}

} // namespace ial
