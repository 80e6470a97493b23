#pragma once

#include "ial/core.hpp"
#include "ial/genmodel.hpp"
#include "ial/rng.hpp"

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace ial {

// Underlying values are stable: they feed stream derivation and CSV order.
enum class EstimatorKind { Passive = 0, PassiveCV = 1, Active = 2, ActiveCV = 3, Oracle = 4, OracleCV = 5 };

inline constexpr std::array<EstimatorKind, 6> kAllEstimators{
    EstimatorKind::Passive, EstimatorKind::PassiveCV, EstimatorKind::Active,
    EstimatorKind::ActiveCV, EstimatorKind::Oracle,   EstimatorKind::OracleCV};

std::string_view to_string(EstimatorKind kind);
EstimatorKind parse_estimator(std::string_view name);

struct SampleRun {
    double estimate = 0.0;
    Dataset dataset;
    std::int64_t k_used = 0;
};

// Full trace of one two-stage run. Rows of `dataset` are ordered: group 0's
// repeats, group 1's repeats, ..., then the exploitation draws.
struct ActiveRunRecord {
    Dataset dataset;
    Vector chosen_z;
    std::size_t chosen_group = 0;
    std::vector<Vector> group_means;
    std::int64_t k_used = 0;
    std::int64_t ell_used = 0;
    double estimate = 0.0;
};

// n IID joint draws, then k-NN at the target covariate.
SampleRun run_passive(const GenerativeModel& model, std::int64_t n, std::int64_t k, Norm metric, RngStream& rng);

// Two-stage estimator. m = floor(n/2) exploration draws go to floor(m/ell)
// groups of ell repeats at a fresh Z ~ P_Z; the group whose mean covariate is
// closest to x0 is exploited with the remaining n - m draws plus the
// exploration remainder m mod ell; k-NN runs over all n samples.
ActiveRunRecord run_active(const GenerativeModel& model, std::int64_t n, std::int64_t k, std::int64_t ell,
                           Norm metric, RngStream& rng);

// Infeasible baseline: n draws conditional on Z = z0.
SampleRun run_oracle(const GenerativeModel& model, std::int64_t n, std::int64_t k, Norm metric, RngStream& rng);

// Passive and oracle sampling with k chosen by cross-validation.
SampleRun run_passive_cv(const GenerativeModel& model, std::int64_t n, std::span<const std::int64_t> k_grid,
                         std::size_t folds, Norm metric, RngStream& rng);
SampleRun run_oracle_cv(const GenerativeModel& model, std::int64_t n, std::span<const std::int64_t> k_grid,
                        std::size_t folds, Norm metric, RngStream& rng);

// Two-stage estimator with both hyperparameters cross-validated.
//
// Exploration uses the largest group size l_max. Within each group the l_max
// repeats are split into folds; for a candidate l and a fold, each group's
// mean over (at most) l of its training repeats picks a group, and the pick is
// scored by the distance from that group's held-out mean to x0. The l with the
// lowest average score (ties to the smaller l) selects the exploited group
// using the first l repeats of every group. k is then cross-validated on all
// n samples.
ActiveRunRecord run_active_cv(const GenerativeModel& model, std::int64_t n, std::span<const std::int64_t> ell_grid,
                              std::span<const std::int64_t> k_grid, std::size_t folds, Norm metric, RngStream& rng);

// Per-candidate average score of the group-size cross-validation above, for
// an already collected exploration stage. Exposed for tests.
std::vector<double> ell_cv_scores(const Dataset& exploration, std::size_t groups, std::size_t repeats,
                                  std::span<const double> x0, std::span<const std::int64_t> ell_grid,
                                  std::size_t folds, Norm metric, RngStream& rng);

struct EstimateOutcome {
    double estimate = 0.0;
    std::int64_t k_used = 0;
    std::int64_t ell_used = 0;
};

// Runs one estimator with the hyperparameter policy the experiments use:
// theory-driven k and l from `spec` for the plain variants (the oracle shares
// the two-stage k), default power-of-two grids and `folds`-fold CV otherwise.
EstimateOutcome run_estimator(EstimatorKind kind, const GenerativeModel& model, const ProblemSpec& spec,
                              std::size_t folds, Norm metric, RngStream& rng);

} // namespace ial
