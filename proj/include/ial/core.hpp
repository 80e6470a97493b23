#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace ial {

// Dense real vector. Holds controls z, covariates x and noise draws.
using Vector = std::vector<double>;

enum class Norm { LInf, L2 };

std::string_view to_string(Norm kind);
Norm parse_norm(std::string_view name);

// Throws std::invalid_argument("zero-dimensional vector") on empty input.
double norm(std::span<const double> v, Norm kind);

// norm(a - b) without materializing the difference.
double distance(std::span<const double> a, std::span<const double> b, Norm kind);

bool all_finite(std::span<const double> v);

enum class Stage { Exploration, Exploitation, Passive };

std::string_view to_string(Stage stage);

struct Triple {
    Vector z;
    Vector x;
    double y = 0.0;
    Stage stage = Stage::Passive;
};

// Row-major view over `count` points of dimension `dim`.
struct PointView {
    std::span<const double> data;
    std::size_t dim = 0;
    std::size_t count = 0;

    std::span<const double> operator[](std::size_t i) const { return data.subspan(i * dim, dim); }
};

// Ordered (z, x, y, stage) observations with fixed dimensions. Storage is
// flat so that nearest-neighbor scans stay cache friendly.
class Dataset {
public:
    Dataset(std::size_t z_dim, std::size_t x_dim);

    void push_back(const Triple& t);
    void push_back(std::span<const double> z, std::span<const double> x, double y, Stage stage);
    void reserve(std::size_t n);

    std::size_t size() const { return ys_.size(); }
    bool empty() const { return ys_.empty(); }
    std::size_t z_dim() const { return z_dim_; }
    std::size_t x_dim() const { return x_dim_; }

    std::span<const double> z(std::size_t i) const { return {zs_.data() + i * z_dim_, z_dim_}; }
    std::span<const double> x(std::size_t i) const { return {xs_.data() + i * x_dim_, x_dim_}; }
    double y(std::size_t i) const { return ys_[i]; }
    Stage stage(std::size_t i) const { return stages_[i]; }

    Triple at(std::size_t i) const;
    PointView covariates() const { return {xs_, x_dim_, size()}; }
    std::span<const double> responses() const { return ys_; }

    std::size_t count(Stage stage) const;

private:
    std::size_t z_dim_;
    std::size_t x_dim_;
    std::vector<double> zs_;
    std::vector<double> xs_;
    std::vector<double> ys_;
    std::vector<Stage> stages_;
};

// Everything the rate and hyperparameter formulas consume. Defaults are the
// synthetic experiment's baseline configuration.
struct ProblemSpec {
    int d_z = 3;
    int d_x = 3;
    double s_f = 1.0;
    double s_g = 1.0;
    double sigma_x = 1.0;
    double sigma_y = 1.0;
    std::int64_t n = 1024;
    double delta = 0.05;

    // Throws std::invalid_argument naming the first violated bound.
    void validate() const;
};

} // namespace ial
