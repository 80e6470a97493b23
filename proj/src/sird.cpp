#include "ial/sird.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

namespace ial::sird {

Params Params::from_vector(std::span<const double> z)
{
    if (z.size() != 3) throw std::invalid_argument("SIRD control must have 3 components");
    return {z[0], z[1], z[2]};
}

namespace {

bool in_unit(double p)
{
    return p >= 0.0 && p <= 1.0;
}

void check(const Params& p)
{
    if (!in_unit(p.beta) || !in_unit(p.gamma) || !in_unit(p.delta_rate) || p.gamma + p.delta_rate > 1.0)
        throw std::invalid_argument("invalid transition probabilities");
}

} // namespace

Trajectory simulate(const Params& params, std::int64_t population, std::int64_t initially_infected, int steps,
                    RngStream& rng)
{
    check(params);
    if (population < 1) throw std::invalid_argument("population must be positive");
    if (initially_infected < 0 || initially_infected > population)
        throw std::invalid_argument("initially infected count outside [0, N]");
    if (steps < 1) throw std::invalid_argument("horizon must be positive");

    Trajectory tr;
    tr.population = population;
    const auto len = static_cast<std::size_t>(steps) + 1;
    tr.s.resize(len);
    tr.i.resize(len);
    tr.r.resize(len);
    tr.d.resize(len);
    tr.s[0] = population - initially_infected;
    tr.i[0] = initially_infected;

    const double n = static_cast<double>(population);
    // Conditional probability of death given "not recovered".
    const double death_given_stay = params.gamma < 1.0 ? params.delta_rate / (1.0 - params.gamma) : 0.0;
    for (std::size_t t = 1; t < len; ++t) {
        const std::int64_t infected = tr.i[t - 1];
        const double p_inf = params.beta * static_cast<double>(infected) / n;
        const std::int64_t new_inf = sample_binomial(rng, tr.s[t - 1], p_inf);
        const std::int64_t new_rec = sample_binomial(rng, infected, params.gamma);
        const std::int64_t new_dead = sample_binomial(rng, infected - new_rec, std::min(death_given_stay, 1.0));
        tr.s[t] = tr.s[t - 1] - new_inf;
        tr.r[t] = tr.r[t - 1] + new_rec;
        tr.d[t] = tr.d[t - 1] + new_dead;
        tr.i[t] = population - (tr.s[t] + tr.r[t] + tr.d[t]);
    }
    return tr;
}

Params sample_prior(RngStream& rng)
{
    Params p;
    p.beta = sample_beta(rng, 2.0, 8.0);
    const double g1 = sample_gamma(rng, 1.0);
    const double g2 = sample_gamma(rng, 0.3);
    const double g3 = sample_gamma(rng, 8.7);
    const double total = g1 + g2 + g3;
    p.gamma = g1 / total;
    p.delta_rate = g2 / total;
    // Rounding can push the pair a hair past the simplex.
    if (p.gamma + p.delta_rate > 1.0) p.delta_rate = 1.0 - p.gamma;
    return p;
}

Vector early_features(const Trajectory& traj, int days)
{
    if (days < 1 || static_cast<std::size_t>(days) > traj.steps())
        throw std::invalid_argument("feature window exceeds trajectory length");
    const double n = static_cast<double>(traj.population);
    Vector x;
    x.reserve(4 * static_cast<std::size_t>(days));
    for (const auto* series : {&traj.s, &traj.i, &traj.r, &traj.d})
        for (int t = 1; t <= days; ++t) x.push_back(static_cast<double>((*series)[static_cast<std::size_t>(t)]) / n);
    return x;
}

SirdModel::SirdModel(Params target, Trajectory target_trajectory)
    : trajectory_(std::move(target_trajectory)),
      z0_(target.as_vector()),
      x0_(early_features(trajectory_)),
      y0_(static_cast<double>(trajectory_.d.back()))
{
    check(target);
}

Observation SirdModel::observe(std::span<const double> z, RngStream& rng) const
{
    const auto tr = simulate(Params::from_vector(z), kPopulation, kInitialInfected, kHorizon, rng);
    return {early_features(tr), static_cast<double>(tr.d.back())};
}

SirdModel make_sird_model(RngStream& rng)
{
    const Params z0 = sample_prior(rng);
    auto tr = simulate(z0, kPopulation, kInitialInfected, kHorizon, rng);
    return SirdModel(z0, std::move(tr));
}

} // namespace ial::sird
