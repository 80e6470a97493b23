#include "ial/harness.hpp"

#include "ial/genmodel.hpp"
#include "ial/sird.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <map>
#include <mutex>
#include <set>
#include <stdexcept>
#include <thread>
#include <tuple>

namespace ial {

namespace {

const std::set<std::string_view> kExp1Params{"n", "s_g", "d_z", "d_x", "sigma_x", "sigma_y"};

bool is_integral(double v)
{
    return std::isfinite(v) && v == std::floor(v);
}

double median_of(std::vector<double> v)
{
    std::sort(v.begin(), v.end());
    const std::size_t h = v.size() / 2;
    return v.size() % 2 == 1 ? v[h] : 0.5 * (v[h - 1] + v[h]);
}

} // namespace

std::string_view experiment_id(ExperimentKind kind)
{
    switch (kind) {
    case ExperimentKind::Exp1Sweep: return "exp1";
    case ExperimentKind::Exp2Sird: return "exp2";
    case ExperimentKind::RateSlope: return "rate_slope";
    }
    return "?";
}

std::vector<double> default_sweep_values(std::string_view p)
{
    std::vector<double> v;
    if (p == "n") {
        for (int e = 4; e <= 12; ++e) v.push_back(std::ldexp(1.0, e));
    } else if (p == "s_g") {
        for (int i = 1; i <= 10; ++i) v.push_back(i / 10.0);
    } else if (p == "d_z" || p == "d_x") {
        for (int d = 1; d <= 10; ++d) v.push_back(d);
    } else if (p == "sigma_x" || p == "sigma_y") {
        for (int i = 0; i <= 10; ++i) v.push_back(std::pow(10.0, (i - 5) / 5.0));
    } else {
        throw std::invalid_argument("unknown sweep parameter '" + std::string(p) + "'");
    }
    return v;
}

std::vector<double> default_sird_sample_sizes()
{
    std::vector<double> v;
    for (int e = 4; e <= 14; ++e) v.push_back(std::ldexp(1.0, e));
    return v;
}

ExperimentConfig default_exp1_config(std::string_view sweep_param)
{
    ExperimentConfig c;
    c.experiment = ExperimentKind::Exp1Sweep;
    c.sweep_param = std::string(sweep_param);
    c.sweep_values = default_sweep_values(sweep_param);
    c.estimators.assign(kAllEstimators.begin(), kAllEstimators.end());
    c.replicates = 1024;
    return c;
}

ExperimentConfig default_exp2_config()
{
    ExperimentConfig c;
    c.experiment = ExperimentKind::Exp2Sird;
    c.base.d_z = 3;
    c.base.d_x = 4 * sird::kObservedDays;
    c.sweep_param = "n";
    c.sweep_values = default_sird_sample_sizes();
    c.estimators = {EstimatorKind::PassiveCV, EstimatorKind::ActiveCV};
    c.replicates = 100;
    return c;
}

ExperimentConfig default_rate_slope_config()
{
    ExperimentConfig c;
    c.experiment = ExperimentKind::RateSlope;
    c.base = ProblemSpec{1, 1, 1.0, 1.0, 0.0, 0.0, 1024, 0.05};
    c.sweep_param = "n";
    for (int e = 6; e <= 12; ++e) c.sweep_values.push_back(std::ldexp(1.0, e));
    c.estimators = {EstimatorKind::Passive};
    c.replicates = 256;
    return c;
}

ProblemSpec apply_sweep(const ProblemSpec& base, std::string_view p, double value)
{
    ProblemSpec s = base;
    const bool integral = p == "n" || p == "d_z" || p == "d_x";
    if (integral && !is_integral(value))
        throw std::invalid_argument("sweep value for '" + std::string(p) + "' must be an integer");
    if (p == "n") s.n = static_cast<std::int64_t>(value);
    else if (p == "s_g") s.s_g = value;
    else if (p == "d_z") s.d_z = static_cast<int>(value);
    else if (p == "d_x") s.d_x = static_cast<int>(value);
    else if (p == "sigma_x") s.sigma_x = value;
    else if (p == "sigma_y") s.sigma_y = value;
    else throw std::invalid_argument("unknown sweep parameter '" + std::string(p) + "'");
    return s;
}

void ExperimentConfig::validate() const
{
    if (sweep_values.empty()) throw std::invalid_argument("sweep_values must be nonempty");
    if (replicates < 1) throw std::invalid_argument("replicates must be >= 1");
    if (estimators.empty()) throw std::invalid_argument("no estimators selected");
    if (cv_folds < 2) throw std::invalid_argument("cv_folds must be >= 2");
    if (threads < 1) throw std::invalid_argument("threads must be >= 1");
    std::set<EstimatorKind> seen;
    for (auto e : estimators)
        if (!seen.insert(e).second) throw std::invalid_argument("duplicate estimator " + std::string(to_string(e)));

    switch (experiment) {
    case ExperimentKind::Exp1Sweep:
        if (!kExp1Params.contains(sweep_param))
            throw std::invalid_argument("unknown sweep parameter '" + sweep_param + "'");
        break;
    case ExperimentKind::Exp2Sird:
        if (sweep_param != "n") throw std::invalid_argument("the epidemic experiment only sweeps n");
        for (auto e : estimators)
            if (e == EstimatorKind::Oracle || e == EstimatorKind::OracleCV)
                throw std::invalid_argument("the epidemic experiment supports Passive, PassiveCV, Active, ActiveCV");
        break;
    case ExperimentKind::RateSlope:
        if (sweep_param != "n") throw std::invalid_argument("rate-slope studies sweep n");
        if (sweep_values.size() < 3) throw std::invalid_argument("rate-slope studies need at least 3 n values");
        break;
    }
    for (double v : sweep_values) apply_sweep(base, sweep_param, v).validate();
    if (sweep_param == "n")
        for (double v : sweep_values)
            if (v < 2) throw std::invalid_argument("sample sizes must be >= 2");
}

RngStream scenario_stream(std::uint64_t base_seed, std::size_t sweep_index, std::size_t replicate)
{
    return derive_stream(base_seed, {sweep_index, replicate});
}

RngStream estimator_stream(std::uint64_t base_seed, std::size_t sweep_index, EstimatorKind kind,
                           std::size_t replicate)
{
    return derive_stream(base_seed, {sweep_index, static_cast<std::uint64_t>(kind), replicate});
}

ResultRecord run_cell(const ExperimentConfig& config, std::size_t sweep_index, EstimatorKind kind,
                      std::size_t replicate)
{
    const double value = config.sweep_values.at(sweep_index);
    ProblemSpec spec = apply_sweep(config.base, config.sweep_param, value);
    RngStream scenario = scenario_stream(config.base_seed, sweep_index, replicate);
    RngStream rng = estimator_stream(config.base_seed, sweep_index, kind, replicate);

    ResultRecord rec;
    rec.experiment_id = std::string(experiment_id(config.experiment));
    rec.sweep_param = config.sweep_param;
    rec.sweep_value = value;
    rec.sweep_index = sweep_index;
    rec.estimator = kind;
    rec.replicate = replicate;
    rec.seed = rng.stream_id();

    const auto start = std::chrono::steady_clock::now();
    EstimateOutcome out;
    if (config.experiment == ExperimentKind::Exp2Sird) {
        const auto model = sird::make_sird_model(scenario);
        spec.d_z = static_cast<int>(model.z_dim());
        spec.d_x = static_cast<int>(model.x_dim());
        out = run_estimator(kind, model, spec, config.cv_folds, config.metric, rng);
        rec.target_value = model.target_value();
    } else {
        const auto model = make_experiment1_model(spec.d_z, spec.d_x, spec.s_g, spec.sigma_x, spec.sigma_y, scenario);
        out = run_estimator(kind, model, spec, config.cv_folds, config.metric, rng);
        rec.target_value = model.target_value();
    }
    const auto stop = std::chrono::steady_clock::now();

    rec.estimate = out.estimate;
    rec.k_used = out.k_used;
    rec.ell_used = out.ell_used;
    const double diff = out.estimate - rec.target_value;
    rec.error = config.experiment == ExperimentKind::Exp1Sweep ? diff * diff : std::abs(diff);
    if (config.record_timing)
        rec.wall_time_ms = std::chrono::duration<double, std::milli>(stop - start).count();
    return rec;
}

std::vector<ResultRecord> run_experiment(const ExperimentConfig& config)
{
    config.validate();
    const std::size_t n_sweep = config.sweep_values.size();
    const std::size_t n_est = config.estimators.size();
    const std::size_t n_rep = config.replicates;
    const std::size_t total = n_sweep * n_est * n_rep;

    std::vector<ResultRecord> out(total);
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;

    auto worker = [&] {
        for (;;) {
            const std::size_t cell = next.fetch_add(1);
            if (cell >= total) return;
            const std::size_t s = cell / (n_est * n_rep);
            const std::size_t e = (cell / n_rep) % n_est;
            const std::size_t r = cell % n_rep;
            try {
                out[cell] = run_cell(config, s, config.estimators[e], r);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                next.store(total);
                return;
            }
        }
    };

    const std::size_t width = std::min(config.threads, std::max<std::size_t>(1, total));
    if (width == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(width);
        for (std::size_t t = 0; t < width; ++t) pool.emplace_back(worker);
    }
    if (failure) std::rethrow_exception(failure);

    std::stable_sort(out.begin(), out.end(), [&](const ResultRecord& a, const ResultRecord& b) {
        return std::tuple(a.sweep_index, static_cast<int>(a.estimator), a.replicate)
            < std::tuple(b.sweep_index, static_cast<int>(b.estimator), b.replicate);
    });
    return out;
}

std::vector<ResultRecord> run_exp1(const ExperimentConfig& config)
{
    if (config.experiment != ExperimentKind::Exp1Sweep) throw std::invalid_argument("not an exp1 config");
    return run_experiment(config);
}

std::vector<ResultRecord> run_exp2(const ExperimentConfig& config)
{
    if (config.experiment != ExperimentKind::Exp2Sird) throw std::invalid_argument("not an exp2 config");
    return run_experiment(config);
}

std::vector<AggregateRow> aggregate(const std::vector<ResultRecord>& records)
{
    using Key = std::tuple<std::string, double, int>;
    std::map<Key, std::vector<double>> groups;
    for (const auto& r : records)
        groups[{r.sweep_param, r.sweep_value, static_cast<int>(r.estimator)}].push_back(r.error);

    std::vector<AggregateRow> rows;
    rows.reserve(groups.size());
    for (const auto& [key, errors] : groups) {
        AggregateRow row;
        row.sweep_param = std::get<0>(key);
        row.sweep_value = std::get<1>(key);
        row.estimator = static_cast<EstimatorKind>(std::get<2>(key));
        row.count = errors.size();
        double sum = 0.0;
        for (double e : errors) sum += e;
        row.mean_error = sum / static_cast<double>(row.count);
        if (row.count > 1) {
            double ss = 0.0;
            for (double e : errors) ss += (e - row.mean_error) * (e - row.mean_error);
            const double sd = std::sqrt(ss / static_cast<double>(row.count - 1));
            row.std_error = sd / std::sqrt(static_cast<double>(row.count));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

Rate theoretical_rate(EstimatorKind kind, const ProblemSpec& spec)
{
    switch (kind) {
    case EstimatorKind::Passive:
    case EstimatorKind::PassiveCV: return passive_rate(spec);
    case EstimatorKind::Active:
    case EstimatorKind::ActiveCV: return active_upper_rate(spec);
    case EstimatorKind::Oracle:
    case EstimatorKind::OracleCV: return active_lower_rate(spec);
    }
    throw std::invalid_argument("unknown estimator");
}

RateSlopeResult run_rate_slope(const ExperimentConfig& config)
{
    if (config.sweep_param != "n") throw std::invalid_argument("rate-slope studies sweep n");
    if (config.sweep_values.size() < 3) throw std::invalid_argument("rate-slope studies need at least 3 n values");
    ExperimentConfig cfg = config;
    cfg.experiment = ExperimentKind::RateSlope;

    RateSlopeResult result;
    result.records = run_experiment(cfg);

    for (auto kind : cfg.estimators) {
        SlopeSummary summary;
        summary.estimator = kind;
        std::size_t first_dominating = 0;
        for (std::size_t s = 0; s < cfg.sweep_values.size(); ++s) {
            const double value = cfg.sweep_values[s];
            std::vector<double> errors;
            for (const auto& r : result.records)
                if (r.estimator == kind && r.sweep_value == value) errors.push_back(r.error);
            const auto n = static_cast<std::int64_t>(value);
            double sum = 0.0;
            for (double e : errors) sum += e;
            summary.median_errors.push_back({n, median_of(errors)});
            summary.mean_errors.push_back({n, sum / static_cast<double>(errors.size())});

            const Rate rate = theoretical_rate(kind, apply_sweep(cfg.base, "n", value));
            summary.theoretical_exponents.push_back(rate.terms[rate.dominating].n_exponent);
            if (s == 0) first_dominating = rate.dominating;
            else if (rate.dominating != first_dominating) summary.regime_change = true;
        }
        summary.theoretical_exponent = summary.theoretical_exponents.back();
        summary.fit = fit_loglog_slope(summary.median_errors);
        result.slopes.push_back(std::move(summary));
    }
    return result;
}

} // namespace ial
