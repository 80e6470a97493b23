#pragma once

#include "ial/core.hpp"
#include "ial/genmodel.hpp"
#include "ial/rng.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace ial::sird {

// delta_rate is the per-step death probability. It is never the confidence
// level of ProblemSpec.
struct Params {
    double beta = 0.0;
    double gamma = 0.0;
    double delta_rate = 0.0;

    Vector as_vector() const { return {beta, gamma, delta_rate}; }
    static Params from_vector(std::span<const double> z);
};

struct Trajectory {
    std::int64_t population = 0;
    // Index t holds the counts after step t; index 0 is the initial state.
    std::vector<std::int64_t> s, i, r, d;

    std::size_t steps() const { return s.empty() ? 0 : s.size() - 1; }
};

inline constexpr std::int64_t kPopulation = 1000;
inline constexpr std::int64_t kInitialInfected = 10;
inline constexpr int kHorizon = 100;
inline constexpr int kObservedDays = 20;

// Discrete-time stochastic SIRD:
//   S_{t-1} - S_t ~ Binomial(S_{t-1}, beta I_{t-1} / N)
//   (dR, dD, stay) ~ Multinomial(I_{t-1}, (gamma, delta_rate, 1 - gamma - delta_rate))
//   I_t = N - S_t - R_t - D_t
// Throws std::invalid_argument("invalid transition probabilities") when a
// rate leaves [0, 1] or gamma + delta_rate > 1.
Trajectory simulate(const Params& params, std::int64_t population, std::int64_t initially_infected, int steps,
                    RngStream& rng);

// beta ~ Beta(2, 8); (gamma, delta_rate) = first two coordinates of
// Dirichlet(1.0, 0.3, 8.7), sampled as normalized Gamma draws.
Params sample_prior(RngStream& rng);

// (S, I, R, D) for days 1..days, concatenated compartment by compartment and
// divided by the population.
Vector early_features(const Trajectory& traj, int days = kObservedDays);

// Z = (beta, gamma, delta_rate), X = early_features, Y = D_T. The target is a
// prior draw z0 with one simulated trajectory supplying x0 and the true Y.
class SirdModel : public GenerativeModel {
public:
    SirdModel(Params target, Trajectory target_trajectory);

    std::size_t z_dim() const override { return 3; }
    std::size_t x_dim() const override { return 4 * kObservedDays; }
    Vector sample_z(RngStream& rng) const override { return sample_prior(rng).as_vector(); }
    Observation observe(std::span<const double> z, RngStream& rng) const override;
    const Vector& target_z() const override { return z0_; }
    const Vector& target_x() const override { return x0_; }
    double target_value() const override { return y0_; }

    const Trajectory& target_trajectory() const { return trajectory_; }

private:
    Trajectory trajectory_;
    Vector z0_;
    Vector x0_;
    double y0_;
};

SirdModel make_sird_model(RngStream& rng);

} // namespace ial::sird
