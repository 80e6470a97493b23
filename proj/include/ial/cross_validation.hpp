#pragma once

#include "ial/core.hpp"
#include "ial/rng.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace ial {

// {1, 2, 4, ..., 2^floor(log2(max_value))}; {1} when max_value < 2.
std::vector<std::int64_t> power_of_two_grid(std::int64_t max_value);
// k grid up to n/2.
std::vector<std::int64_t> default_k_grid(std::int64_t n);
// Group-size grid up to sqrt(m), m = floor(n/2).
std::vector<std::int64_t> default_ell_grid(std::int64_t n);

// Fold label for each of n items: a shuffle of [0, n) cut into `folds`
// contiguous chunks whose sizes differ by at most one.
std::vector<std::size_t> make_folds(std::size_t n, std::size_t folds, RngStream& rng);

// Held-out mean squared error of k-NN prediction for each grid value, given
// an explicit fold labelling. Every point is predicted once, from the points
// outside its fold. A candidate larger than the smallest training set has no
// score.
std::vector<std::optional<double>> cv_scores(const Dataset& data, std::span<const std::int64_t> grid,
                                             std::span<const std::size_t> fold_of, std::size_t folds,
                                             Norm metric);

// Grid value with the smallest score; ties go to the smaller value.
// Throws std::invalid_argument if every candidate is skipped.
std::int64_t cv_select_k(const Dataset& data, std::span<const std::int64_t> grid, std::size_t folds, Norm metric,
                         RngStream& rng);

} // namespace ial
