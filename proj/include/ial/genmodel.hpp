#pragma once

#include "ial/core.hpp"
#include "ial/rng.hpp"

#include <cstddef>
#include <functional>
#include <span>

namespace ial {

struct Observation {
    Vector x;
    double y = 0.0;
};

// Sampling interface for the indirect model: the learner picks a control z,
// nature returns a covariate x and response y. Implementations are immutable;
// all randomness comes from the caller's stream.
class GenerativeModel {
public:
    virtual ~GenerativeModel() = default;

    virtual std::size_t z_dim() const = 0;
    virtual std::size_t x_dim() const = 0;

    // Z ~ P_Z.
    virtual Vector sample_z(RngStream& rng) const = 0;
    // (X, Y) given Z = z.
    virtual Observation observe(std::span<const double> z, RngStream& rng) const = 0;

    virtual const Vector& target_z() const = 0;
    virtual const Vector& target_x() const = 0;
    // The quantity an estimator tries to recover at target_x().
    virtual double target_value() const = 0;
};

// Z ~ P_Z, then (X, Y) | Z. Stage is Passive.
Triple draw_joint(const GenerativeModel& model, RngStream& rng);
// (X, Y) | Z = z. Throws std::invalid_argument on a dimension mismatch.
Triple draw_conditional(const GenerativeModel& model, std::span<const double> z, RngStream& rng,
                        Stage stage = Stage::Passive);

// X = g(Z) + sigma_x * eps_X, Y = f(X) + sigma_y * eps_Y with standard normal
// noise. g, f and P_Z are supplied as callables; the target is z0 with
// x0 = g(z0).
class AdditiveNoiseModel : public GenerativeModel {
public:
    using ControlSampler = std::function<Vector(RngStream&)>;
    using Link = std::function<Vector(std::span<const double>)>;
    using Response = std::function<double(std::span<const double>)>;

    AdditiveNoiseModel(std::size_t z_dim, std::size_t x_dim, ControlSampler sample_z, Link g, Response f,
                       double sigma_x, double sigma_y, Vector z0);

    std::size_t z_dim() const override { return z_dim_; }
    std::size_t x_dim() const override { return x_dim_; }
    Vector sample_z(RngStream& rng) const override { return sampler_(rng); }
    Observation observe(std::span<const double> z, RngStream& rng) const override;
    const Vector& target_z() const override { return z0_; }
    const Vector& target_x() const override { return x0_; }
    double target_value() const override { return f(x0_); }

    Vector g(std::span<const double> z) const { return g_(z); }
    double f(std::span<const double> x) const { return f_(x); }
    double sigma_x() const { return sigma_x_; }
    double sigma_y() const { return sigma_y_; }

    Vector noise_x(RngStream& rng) const;
    double noise_y(RngStream& rng) const;

private:
    std::size_t z_dim_;
    std::size_t x_dim_;
    ControlSampler sampler_;
    Link g_;
    Response f_;
    double sigma_x_;
    double sigma_y_;
    Vector z0_;
    Vector x0_;
};

// The synthetic process: P_Z uniform on [0,1]^d_z, every coordinate of g(z)
// equal to sum_j |z_j|^s_g, f(x) = ||x||_2.
class SyntheticModel : public AdditiveNoiseModel {
public:
    SyntheticModel(int d_z, int d_x, double s_g, double sigma_x, double sigma_y, Vector z0);

    double s_g() const { return s_g_; }

private:
    double s_g_;
};

double synthetic_link_coordinate(std::span<const double> z, double s_g);

// Validates parameters, draws z0 ~ P_Z from `rng`, sets x0 = g(z0).
SyntheticModel make_experiment1_model(int d_z, int d_x, double s_g, double sigma_x, double sigma_y,
                                      RngStream& rng);

} // namespace ial
