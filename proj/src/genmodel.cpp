#include "ial/genmodel.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace ial {

Triple draw_joint(const GenerativeModel& model, RngStream& rng)
{
    Vector z = model.sample_z(rng);
    auto obs = model.observe(z, rng);
    return {std::move(z), std::move(obs.x), obs.y, Stage::Passive};
}

Triple draw_conditional(const GenerativeModel& model, std::span<const double> z, RngStream& rng, Stage stage)
{
    if (z.size() != model.z_dim()) throw std::invalid_argument("control dimension mismatch");
    auto obs = model.observe(z, rng);
    return {Vector(z.begin(), z.end()), std::move(obs.x), obs.y, stage};
}

AdditiveNoiseModel::AdditiveNoiseModel(std::size_t z_dim, std::size_t x_dim, ControlSampler sample_z, Link g,
                                       Response f, double sigma_x, double sigma_y, Vector z0)
    : z_dim_(z_dim),
      x_dim_(x_dim),
      sampler_(std::move(sample_z)),
      g_(std::move(g)),
      f_(std::move(f)),
      sigma_x_(sigma_x),
      sigma_y_(sigma_y),
      z0_(std::move(z0))
{
    if (z_dim_ == 0 || x_dim_ == 0) throw std::invalid_argument("zero-dimensional vector");
    if (!(sigma_x_ >= 0.0) || !(sigma_y_ >= 0.0)) throw std::invalid_argument("noise scales must be >= 0");
    if (z0_.size() != z_dim_) throw std::invalid_argument("target control dimension mismatch");
    x0_ = g_(z0_);
    if (x0_.size() != x_dim_) throw std::invalid_argument("link output dimension mismatch");
}

Vector AdditiveNoiseModel::noise_x(RngStream& rng) const
{
    Vector e(x_dim_);
    for (double& c : e) c = sample_normal(rng);
    return e;
}

double AdditiveNoiseModel::noise_y(RngStream& rng) const
{
    return sample_normal(rng);
}

Observation AdditiveNoiseModel::observe(std::span<const double> z, RngStream& rng) const
{
    Observation obs{g_(z), 0.0};
    // Noise is drawn even when sigma is zero so that the stream position does
    // not depend on the noise scale.
    const Vector ex = noise_x(rng);
    for (std::size_t j = 0; j < x_dim_; ++j) obs.x[j] += sigma_x_ * ex[j];
    obs.y = f_(obs.x) + sigma_y_ * noise_y(rng);
    return obs;
}

double synthetic_link_coordinate(std::span<const double> z, double s_g)
{
    double s = 0.0;
    for (double c : z) s += std::pow(std::abs(c), s_g);
    return s;
}

SyntheticModel::SyntheticModel(int d_z, int d_x, double s_g, double sigma_x, double sigma_y, Vector z0)
    : AdditiveNoiseModel(
          static_cast<std::size_t>(d_z), static_cast<std::size_t>(d_x),
          [d_z](RngStream& rng) {
              Vector z(static_cast<std::size_t>(d_z));
              for (double& c : z) c = rng.uniform();
              return z;
          },
          [d_x, s_g](std::span<const double> z) {
              return Vector(static_cast<std::size_t>(d_x), synthetic_link_coordinate(z, s_g));
          },
          [](std::span<const double> x) { return norm(x, Norm::L2); }, sigma_x, sigma_y, std::move(z0)),
      s_g_(s_g)
{
}

SyntheticModel make_experiment1_model(int d_z, int d_x, double s_g, double sigma_x, double sigma_y, RngStream& rng)
{
    if (d_z < 1 || d_x < 1) throw std::invalid_argument("dimensions must be positive");
    if (!(s_g > 0.0 && s_g <= 1.0)) throw std::invalid_argument("s_g must lie in (0, 1]");
    if (!(sigma_x >= 0.0) || !(sigma_y >= 0.0)) throw std::invalid_argument("noise scales must be >= 0");
    Vector z0(static_cast<std::size_t>(d_z));
    for (double& c : z0) c = rng.uniform();
    return SyntheticModel(d_z, d_x, s_g, sigma_x, sigma_y, std::move(z0));
}

} // namespace ial
