#pragma once

#include "ial/core.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace ial {

// One term of a minimax rate, written as base^exponent with the n-dependence
// inside base. `n_exponent` is the power of n the term decays with (ignoring
// log factors), used for slope comparisons.
struct RateTerm {
    double value = 0.0;
    double n_exponent = 0.0;
};

struct Rate {
    std::vector<RateTerm> terms;
    double value = 0.0;
    std::size_t dominating = 0;
};

// Passive minimax rate: max of
//   (1/n)^(s_f s_g/d_z), (sigma_x^d_x/n)^(s_f/(d_x + d_z/s_g)),
//   (sigma_y^2/n)^(s_f/(2s_f + d_z/s_g)), (sigma_x^d_x sigma_y^2/n)^(s_f/(2s_f + d_x + d_z/s_g)).
Rate passive_rate(const ProblemSpec& spec);
// Two-stage upper rate: max of
//   (1/n)^(s_f s_g/d_z), (sigma_x^d_x/n)^(s_f/d_x), sigma_y/sqrt(n),
//   (sigma_y^2 sigma_x^d_x/n)^(s_f/(2s_f + d_x)), (sigma_x^2 ln n/n)^(s_f s_g/(2s_g + d_z)).
Rate active_upper_rate(const ProblemSpec& spec);
// Active lower rate: the first four upper-rate terms.
Rate active_lower_rate(const ProblemSpec& spec);

double phi_passive(const ProblemSpec& spec);
double phi_active_upper(const ProblemSpec& spec);
double phi_active_lower(const ProblemSpec& spec);

struct RateReport {
    double phi_passive = 0.0;
    double phi_active_upper = 0.0;
    double phi_active_lower = 0.0;
    std::size_t passive_term = 0;
    std::size_t active_upper_term = 0;
    std::size_t active_lower_term = 0;
};

RateReport rate_report(const ProblemSpec& spec);

struct SlopeFit {
    double slope = 0.0;
    double intercept = 0.0;
};

struct ScalingPoint {
    std::int64_t n = 0;
    double error = 0.0;
};

// Ordinary least squares of ln(error) on ln(n).
// Throws std::invalid_argument("log of nonpositive") for error <= 0, and on
// fewer than two points or repeated n.
SlopeFit fit_loglog_slope(std::span<const ScalingPoint> points);

} // namespace ial
