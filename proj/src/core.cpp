#include "ial/core.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace ial {

std::string_view to_string(Norm kind)
{
    return kind == Norm::LInf ? "linf" : "l2";
}

Norm parse_norm(std::string_view name)
{
    if (name == "linf" || name == "LInf") return Norm::LInf;
    if (name == "l2" || name == "L2") return Norm::L2;
    throw std::invalid_argument("unknown norm '" + std::string(name) + "'");
}

double norm(std::span<const double> v, Norm kind)
{
    if (v.empty()) throw std::invalid_argument("zero-dimensional vector");
    if (kind == Norm::LInf) {
        double m = 0.0;
        for (double c : v) m = std::max(m, std::abs(c));
        return m;
    }
    double s = 0.0;
    for (double c : v) s += c * c;
    return std::sqrt(s);
}

double distance(std::span<const double> a, std::span<const double> b, Norm kind)
{
    if (a.size() != b.size()) throw std::invalid_argument("dimension mismatch");
    if (a.empty()) throw std::invalid_argument("zero-dimensional vector");
    if (kind == Norm::LInf) {
        double m = 0.0;
        for (std::size_t j = 0; j < a.size(); ++j) m = std::max(m, std::abs(a[j] - b[j]));
        return m;
    }
    double s = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) {
        const double d = a[j] - b[j];
        s += d * d;
    }
    return std::sqrt(s);
}

bool all_finite(std::span<const double> v)
{
    return std::all_of(v.begin(), v.end(), [](double c) { return std::isfinite(c); });
}

std::string_view to_string(Stage stage)
{
    switch (stage) {
    case Stage::Exploration: return "exploration";
    case Stage::Exploitation: return "exploitation";
    case Stage::Passive: return "passive";
    }
    return "?";
}

Dataset::Dataset(std::size_t z_dim, std::size_t x_dim) : z_dim_(z_dim), x_dim_(x_dim)
{
    if (z_dim == 0 || x_dim == 0) throw std::invalid_argument("zero-dimensional vector");
}

void Dataset::push_back(const Triple& t)
{
    push_back(t.z, t.x, t.y, t.stage);
}

void Dataset::push_back(std::span<const double> z, std::span<const double> x, double y, Stage stage)
{
    if (z.size() != z_dim_ || x.size() != x_dim_)
        throw std::invalid_argument("triple dimensions do not match dataset");
    zs_.insert(zs_.end(), z.begin(), z.end());
    xs_.insert(xs_.end(), x.begin(), x.end());
    ys_.push_back(y);
    stages_.push_back(stage);
}

void Dataset::reserve(std::size_t n)
{
    zs_.reserve(n * z_dim_);
    xs_.reserve(n * x_dim_);
    ys_.reserve(n);
    stages_.reserve(n);
}

Triple Dataset::at(std::size_t i) const
{
    if (i >= size()) throw std::out_of_range("dataset index out of range");
    const auto zi = z(i);
    const auto xi = x(i);
    return {Vector(zi.begin(), zi.end()), Vector(xi.begin(), xi.end()), ys_[i], stages_[i]};
}

std::size_t Dataset::count(Stage s) const
{
    return static_cast<std::size_t>(std::count(stages_.begin(), stages_.end(), s));
}

void ProblemSpec::validate() const
{
    if (d_z < 1) throw std::invalid_argument("d_z must be a positive integer");
    if (d_x < 1) throw std::invalid_argument("d_x must be a positive integer");
    if (!(s_f > 0.0 && s_f <= 1.0)) throw std::invalid_argument("s_f must lie in (0, 1]");
    if (!(s_g > 0.0 && s_g <= 1.0)) throw std::invalid_argument("s_g must lie in (0, 1]");
    if (!(sigma_x >= 0.0) || !std::isfinite(sigma_x)) throw std::invalid_argument("sigma_x must be >= 0");
    if (!(sigma_y >= 0.0) || !std::isfinite(sigma_y)) throw std::invalid_argument("sigma_y must be >= 0");
    if (n < 1) throw std::invalid_argument("n must be a positive integer");
    if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("delta must lie in (0, 1)");
}

} // namespace ial
