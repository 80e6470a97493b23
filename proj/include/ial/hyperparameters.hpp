#pragma once

#include "ial/core.hpp"

#include <cstdint>

namespace ial {

// Theory-driven neighbor count for the passive k-NN estimator:
//   k = max{4 ln(4/delta), min{b1, b2}}
//   b1 = sigma_y^(2(d_x + d_z/s_g)/(2s_f + d_x + d_z/s_g)) (n / sigma_x^d_x)^(2s_f/(2s_f + d_x + d_z/s_g))
//   b2 = sigma_y^(2d_z/(2s_f s_g + d_z)) n^(2s_f s_g/(2s_f s_g + d_z))
// b1 is +inf when sigma_x = 0; both are 0 when sigma_y = 0. Rounded half-up
// and clamped to [1, n].
std::int64_t theoretical_passive_k(const ProblemSpec& spec);

// Two-stage estimator's neighbor count, proportionality constant 1:
//   k = max{ln(1/delta), min{n, (sigma_y / sigma_x^s_f)^(2d_x/(2s_f + d_x)) n^(2s_f/(2s_f + d_x))}}
// Rounded half-up, clamped to [1, floor(n/2)].
std::int64_t theoretical_active_k(const ProblemSpec& spec);

// Two-stage estimator's exploration group size, proportionality constant 1:
//   l = max{ln(1/delta), min{n, sigma_x^(2d_z/(2s_g + d_z)) n^(2s_g/(2s_g + d_z)) (ln n)^(d_z/(2s_g + d_z))}}
// Rounded half-up, clamped to [1, floor(n/2)].
std::int64_t theoretical_active_ell(const ProblemSpec& spec);

// Round half-up, then clamp to [lo, hi]. Non-finite and huge inputs saturate.
std::int64_t round_and_clamp(double value, std::int64_t lo, std::int64_t hi);

} // namespace ial
