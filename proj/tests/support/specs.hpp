#pragma once

#include "ial/core.hpp"
#include "ial/rng.hpp"

#include <cmath>
#include <cstdint>

namespace testing_support {

// Valid spec with dimensions 1..10, smoothness in (0, 1], noise levels
// log-uniform on [0.1, 10] with a 10% chance of exact zero each, n log-uniform
// on [2, 2^20] and delta in (0.001, 0.5).
inline ial::ProblemSpec random_spec(ial::RngStream& rng)
{
    auto sigma = [&] { return rng.uniform() < 0.1 ? 0.0 : std::pow(10.0, 2.0 * rng.uniform() - 1.0); };
    ial::ProblemSpec s;
    s.d_z = 1 + static_cast<int>(rng.uniform_index(10));
    s.d_x = 1 + static_cast<int>(rng.uniform_index(10));
    s.s_f = rng.uniform_open();
    s.s_g = rng.uniform_open();
    s.sigma_x = sigma();
    s.sigma_y = sigma();
    s.n = std::max<std::int64_t>(2, static_cast<std::int64_t>(std::round(std::exp2(1.0 + 19.0 * rng.uniform()))));
    s.delta = 0.001 + 0.499 * rng.uniform_open();
    return s;
}

} // namespace testing_support
