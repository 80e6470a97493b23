#include "ial/hyperparameters.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace ial {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::int64_t half_of(std::int64_t n)
{
    return std::max<std::int64_t>(1, n / 2);
}

} // namespace

std::int64_t round_and_clamp(double value, std::int64_t lo, std::int64_t hi)
{
    if (std::isnan(value) || value <= static_cast<double>(lo)) return lo;
    if (value >= static_cast<double>(hi)) return hi;
    return std::clamp(static_cast<std::int64_t>(std::floor(value + 0.5)), lo, hi);
}

std::int64_t theoretical_passive_k(const ProblemSpec& spec)
{
    spec.validate();
    const double dx = spec.d_x;
    const double dz = spec.d_z;
    const double sf = spec.s_f;
    const double sg = spec.s_g;
    const double ln_n = std::log(static_cast<double>(spec.n));

    double noisy_branch = 0.0;
    double manifold_branch = 0.0;
    if (spec.sigma_y > 0.0) {
        const double eff = dx + dz / sg;
        if (spec.sigma_x == 0.0) {
            noisy_branch = kInf;
        } else {
            // Log domain keeps n / sigma_x^d_x finite for tiny sigma_x.
            const double log_b1 = 2.0 * eff / (2.0 * sf + eff) * std::log(spec.sigma_y)
                + 2.0 * sf / (2.0 * sf + eff) * (ln_n - dx * std::log(spec.sigma_x));
            noisy_branch = std::exp(log_b1);
        }
        const double denom = 2.0 * sf * sg + dz;
        manifold_branch = std::exp(2.0 * dz / denom * std::log(spec.sigma_y) + 2.0 * sf * sg / denom * ln_n);
    }
    const double k = std::max(4.0 * std::log(4.0 / spec.delta), std::min(noisy_branch, manifold_branch));
    return round_and_clamp(k, 1, spec.n);
}

std::int64_t theoretical_active_k(const ProblemSpec& spec)
{
    spec.validate();
    const double n = static_cast<double>(spec.n);
    const double dx = spec.d_x;
    const double sf = spec.s_f;

    double inner = 0.0;
    if (spec.sigma_y > 0.0) {
        if (spec.sigma_x == 0.0) {
            inner = n;
        } else {
            const double log_ratio = std::log(spec.sigma_y) - sf * std::log(spec.sigma_x);
            const double log_v = 2.0 * dx / (2.0 * sf + dx) * log_ratio + 2.0 * sf / (2.0 * sf + dx) * std::log(n);
            inner = std::min(n, std::exp(log_v));
        }
    }
    const double k = std::max(std::log(1.0 / spec.delta), inner);
    return round_and_clamp(k, 1, half_of(spec.n));
}

std::int64_t theoretical_active_ell(const ProblemSpec& spec)
{
    spec.validate();
    const double n = static_cast<double>(spec.n);
    const double dz = spec.d_z;
    const double sg = spec.s_g;

    double inner = 0.0;
    if (spec.sigma_x > 0.0 && spec.n >= 2) {
        const double denom = 2.0 * sg + dz;
        const double log_v = 2.0 * dz / denom * std::log(spec.sigma_x) + 2.0 * sg / denom * std::log(n)
            + dz / denom * std::log(std::log(n));
        inner = std::min(n, std::exp(log_v));
    }
    const double ell = std::max(std::log(1.0 / spec.delta), inner);
    return round_and_clamp(ell, 1, half_of(spec.n));
}

} // namespace ial
