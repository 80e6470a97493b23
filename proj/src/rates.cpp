#include "ial/rates.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace ial {

namespace {

// base^exponent with the 0^positive = 0 convention made explicit.
RateTerm term(double base, double exponent)
{
    return {base == 0.0 ? 0.0 : std::pow(base, exponent), -exponent};
}

Rate finish(std::vector<RateTerm> terms)
{
    Rate r{std::move(terms), 0.0, 0};
    for (std::size_t i = 0; i < r.terms.size(); ++i) {
        if (i == 0 || r.terms[i].value > r.value) {
            r.value = r.terms[i].value;
            r.dominating = i;
        }
    }
    return r;
}

std::vector<RateTerm> active_common_terms(const ProblemSpec& s)
{
    const double n = static_cast<double>(s.n);
    const double sx_dx = std::pow(s.sigma_x, s.d_x);
    return {
        term(1.0 / n, s.s_f * s.s_g / s.d_z),
        term(sx_dx / n, s.s_f / s.d_x),
        {s.sigma_y / std::sqrt(n), -0.5},
        term(s.sigma_y * s.sigma_y * sx_dx / n, s.s_f / (2.0 * s.s_f + s.d_x)),
    };
}

} // namespace

Rate passive_rate(const ProblemSpec& s)
{
    s.validate();
    const double n = static_cast<double>(s.n);
    const double manifold = s.d_z / s.s_g;
    const double sx_dx = std::pow(s.sigma_x, s.d_x);
    const double sy2 = s.sigma_y * s.sigma_y;
    return finish({
        term(1.0 / n, s.s_f * s.s_g / s.d_z),
        term(sx_dx / n, s.s_f / (s.d_x + manifold)),
        term(sy2 / n, s.s_f / (2.0 * s.s_f + manifold)),
        term(sx_dx * sy2 / n, s.s_f / (2.0 * s.s_f + s.d_x + manifold)),
    });
}

Rate active_upper_rate(const ProblemSpec& s)
{
    s.validate();
    if (s.n < 2) throw std::invalid_argument("active upper rate needs n >= 2");
    const double n = static_cast<double>(s.n);
    auto terms = active_common_terms(s);
    terms.push_back(term(s.sigma_x * s.sigma_x * std::log(n) / n, s.s_f * s.s_g / (2.0 * s.s_g + s.d_z)));
    return finish(std::move(terms));
}

Rate active_lower_rate(const ProblemSpec& s)
{
    s.validate();
    return finish(active_common_terms(s));
}

double phi_passive(const ProblemSpec& spec)
{
    return passive_rate(spec).value;
}

double phi_active_upper(const ProblemSpec& spec)
{
    return active_upper_rate(spec).value;
}

double phi_active_lower(const ProblemSpec& spec)
{
    return active_lower_rate(spec).value;
}

RateReport rate_report(const ProblemSpec& spec)
{
    const auto p = passive_rate(spec);
    const auto u = active_upper_rate(spec);
    const auto l = active_lower_rate(spec);
    return {p.value, u.value, l.value, p.dominating, u.dominating, l.dominating};
}

SlopeFit fit_loglog_slope(std::span<const ScalingPoint> points)
{
    if (points.size() < 2) throw std::invalid_argument("need at least two points");
    std::set<std::int64_t> seen;
    double mx = 0.0;
    double my = 0.0;
    for (const auto& p : points) {
        if (p.n < 1) throw std::invalid_argument("log of nonpositive");
        if (!(p.error > 0.0)) throw std::invalid_argument("log of nonpositive");
        if (!seen.insert(p.n).second) throw std::invalid_argument("repeated n");
        mx += std::log(static_cast<double>(p.n));
        my += std::log(p.error);
    }
    const double count = static_cast<double>(points.size());
    mx /= count;
    my /= count;
    double sxy = 0.0;
    double sxx = 0.0;
    for (const auto& p : points) {
        const double dx = std::log(static_cast<double>(p.n)) - mx;
        sxy += dx * (std::log(p.error) - my);
        sxx += dx * dx;
    }
    const double slope = sxy / sxx;
    return {slope, my - slope * mx};
}

} // namespace ial
