#pragma once

#include "ial/core.hpp"
#include "ial/estimators.hpp"
#include "ial/rates.hpp"

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace ial {

enum class ExperimentKind { Exp1Sweep, Exp2Sird, RateSlope };

std::string_view experiment_id(ExperimentKind kind);

struct ExperimentConfig {
    ExperimentKind experiment = ExperimentKind::Exp1Sweep;
    ProblemSpec base;
    std::string sweep_param = "n";
    std::vector<double> sweep_values;
    std::vector<EstimatorKind> estimators;
    std::size_t replicates = 1024;
    std::uint64_t base_seed = 1;
    Norm metric = Norm::LInf;
    std::size_t cv_folds = 4;
    std::size_t threads = 1;
    // Wall time is nondeterministic; off by default so persisted records are
    // byte-reproducible.
    bool record_timing = false;

    // Throws std::invalid_argument describing the first problem found.
    void validate() const;
};

// Sweep grids: n in {2^4..2^12}, s_g in {0.1..1.0}, d_z/d_x in {1..10},
// sigma_x/sigma_y in {10^-1, 10^-0.8, ..., 10^1}.
std::vector<double> default_sweep_values(std::string_view sweep_param);
std::vector<double> default_sird_sample_sizes(); // {2^4..2^14}

ExperimentConfig default_exp1_config(std::string_view sweep_param = "n");
ExperimentConfig default_exp2_config();
ExperimentConfig default_rate_slope_config();

// Base spec with one parameter replaced. Throws on unknown names or
// non-integral values for integer parameters.
ProblemSpec apply_sweep(const ProblemSpec& base, std::string_view sweep_param, double value);

struct ResultRecord {
    std::string experiment_id;
    std::string sweep_param;
    double sweep_value = 0.0;
    std::size_t sweep_index = 0;
    EstimatorKind estimator = EstimatorKind::Passive;
    std::size_t replicate = 0;
    // stream_id of derive_stream(base_seed, [sweep index, estimator, replicate]).
    std::uint64_t seed = 0;
    double error = 0.0;
    std::int64_t k_used = 0;
    std::int64_t ell_used = 0;
    double wall_time_ms = 0.0;
    // Ground truth at the replicate's target (f(x0), or D_T for the epidemic).
    double target_value = 0.0;
    double estimate = 0.0;
};

// Streams of one cell. The scenario (target draw) is shared by every
// estimator within a (sweep value, replicate) pair.
RngStream scenario_stream(std::uint64_t base_seed, std::size_t sweep_index, std::size_t replicate);
RngStream estimator_stream(std::uint64_t base_seed, std::size_t sweep_index, EstimatorKind kind,
                           std::size_t replicate);

// Runs a single (sweep value, estimator, replicate) cell in isolation.
ResultRecord run_cell(const ExperimentConfig& config, std::size_t sweep_index, EstimatorKind kind,
                      std::size_t replicate);

// All cells, executed on `config.threads` workers and returned in canonical
// order (sweep index, estimator, replicate).
std::vector<ResultRecord> run_experiment(const ExperimentConfig& config);
std::vector<ResultRecord> run_exp1(const ExperimentConfig& config);
std::vector<ResultRecord> run_exp2(const ExperimentConfig& config);

struct AggregateRow {
    std::string sweep_param;
    double sweep_value = 0.0;
    EstimatorKind estimator = EstimatorKind::Passive;
    double mean_error = 0.0;
    // Sample standard deviation / sqrt(count); 0 for a single record.
    double std_error = 0.0;
    std::size_t count = 0;
};

std::vector<AggregateRow> aggregate(const std::vector<ResultRecord>& records);

struct SlopeSummary {
    EstimatorKind estimator = EstimatorKind::Passive;
    std::vector<ScalingPoint> median_errors;
    std::vector<ScalingPoint> mean_errors;
    SlopeFit fit;
    // n-exponent of the dominating term of the matching rate at each n.
    std::vector<double> theoretical_exponents;
    double theoretical_exponent = 0.0; // at the largest n
    bool regime_change = false;
};

struct RateSlopeResult {
    std::vector<ResultRecord> records;
    std::vector<SlopeSummary> slopes;
};

// Rate governing each estimator: passive for the passive pair, the two-stage
// upper rate for the active pair, the active lower rate for the oracle pair.
Rate theoretical_rate(EstimatorKind kind, const ProblemSpec& spec);

// Runs the n-sweep, fits log(median |error|) against log(n) per estimator.
// Throws std::invalid_argument unless sweeping n over at least 3 values.
RateSlopeResult run_rate_slope(const ExperimentConfig& config);

} // namespace ial
