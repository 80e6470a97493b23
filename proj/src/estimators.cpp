#include "ial/estimators.hpp"

#include "ial/cross_validation.hpp"
#include "ial/hyperparameters.hpp"
#include "ial/knn.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>

namespace ial {

namespace {

// Sub-stream labels; CV shuffles never consume the sampling stream.
constexpr std::uint64_t kEllFoldStream = 1;
constexpr std::uint64_t kKFoldStream = 2;

// Running mean: exact when every input is the same vector.
Vector mean_of_rows(const Dataset& data, std::span<const std::size_t> rows)
{
    Vector m(data.x_dim(), 0.0);
    double count = 0.0;
    for (std::size_t r : rows) {
        count += 1.0;
        const auto x = data.x(r);
        for (std::size_t j = 0; j < m.size(); ++j) m[j] += (x[j] - m[j]) / count;
    }
    return m;
}

Vector mean_of_range(const Dataset& data, std::size_t first, std::size_t count)
{
    std::vector<std::size_t> rows(count);
    for (std::size_t j = 0; j < count; ++j) rows[j] = first + j;
    return mean_of_rows(data, rows);
}

std::size_t closest(std::span<const Vector> means, std::span<const double> x0, Norm metric)
{
    std::size_t best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < means.size(); ++i) {
        const double d = distance(means[i], x0, metric);
        if (d < best_d) {
            best_d = d;
            best = i;
        }
    }
    return best;
}

void require_budget(std::int64_t n)
{
    if (n < 1) throw std::invalid_argument("budget n must be positive");
}

// Appends `groups` x `repeats` exploration rows and returns each group's Z.
std::vector<Vector> explore(const GenerativeModel& model, std::size_t groups, std::size_t repeats, Dataset& data,
                            RngStream& rng)
{
    std::vector<Vector> zs;
    zs.reserve(groups);
    for (std::size_t i = 0; i < groups; ++i) {
        Vector z = model.sample_z(rng);
        for (std::size_t l = 0; l < repeats; ++l) {
            const auto obs = model.observe(z, rng);
            data.push_back(z, obs.x, obs.y, Stage::Exploration);
        }
        zs.push_back(std::move(z));
    }
    return zs;
}

void exploit(const GenerativeModel& model, std::span<const double> z, std::size_t count, Dataset& data,
             RngStream& rng)
{
    for (std::size_t j = 0; j < count; ++j) {
        const auto obs = model.observe(z, rng);
        data.push_back(z, obs.x, obs.y, Stage::Exploitation);
    }
}

Dataset draw_passive(const GenerativeModel& model, std::int64_t n, RngStream& rng)
{
    require_budget(n);
    Dataset data(model.z_dim(), model.x_dim());
    data.reserve(static_cast<std::size_t>(n));
    for (std::int64_t i = 0; i < n; ++i) {
        const auto t = draw_joint(model, rng);
        data.push_back(t);
    }
    return data;
}

Dataset draw_oracle(const GenerativeModel& model, std::int64_t n, RngStream& rng)
{
    require_budget(n);
    Dataset data(model.z_dim(), model.x_dim());
    data.reserve(static_cast<std::size_t>(n));
    exploit(model, model.target_z(), static_cast<std::size_t>(n), data, rng);
    return data;
}

} // namespace

std::string_view to_string(EstimatorKind kind)
{
    switch (kind) {
    case EstimatorKind::Passive: return "Passive";
    case EstimatorKind::PassiveCV: return "PassiveCV";
    case EstimatorKind::Active: return "Active";
    case EstimatorKind::ActiveCV: return "ActiveCV";
    case EstimatorKind::Oracle: return "Oracle";
    case EstimatorKind::OracleCV: return "OracleCV";
    }
    return "?";
}

EstimatorKind parse_estimator(std::string_view name)
{
    for (auto kind : kAllEstimators)
        if (to_string(kind) == name) return kind;
    throw std::invalid_argument("unknown estimator '" + std::string(name) + "'");
}

SampleRun run_passive(const GenerativeModel& model, std::int64_t n, std::int64_t k, Norm metric, RngStream& rng)
{
    if (k < 1 || k > n) throw std::invalid_argument("k out of range");
    SampleRun run{0.0, draw_passive(model, n, rng), k};
    run.estimate = knn_regress(model.target_x(), run.dataset, static_cast<std::size_t>(k), metric);
    return run;
}

SampleRun run_oracle(const GenerativeModel& model, std::int64_t n, std::int64_t k, Norm metric, RngStream& rng)
{
    if (k < 1 || k > n) throw std::invalid_argument("k out of range");
    SampleRun run{0.0, draw_oracle(model, n, rng), k};
    run.estimate = knn_regress(model.target_x(), run.dataset, static_cast<std::size_t>(k), metric);
    return run;
}

SampleRun run_passive_cv(const GenerativeModel& model, std::int64_t n, std::span<const std::int64_t> k_grid,
                         std::size_t folds, Norm metric, RngStream& rng)
{
    SampleRun run{0.0, draw_passive(model, n, rng), 0};
    RngStream fold_rng = rng.split(kKFoldStream);
    run.k_used = cv_select_k(run.dataset, k_grid, folds, metric, fold_rng);
    run.estimate = knn_regress(model.target_x(), run.dataset, static_cast<std::size_t>(run.k_used), metric);
    return run;
}

SampleRun run_oracle_cv(const GenerativeModel& model, std::int64_t n, std::span<const std::int64_t> k_grid,
                        std::size_t folds, Norm metric, RngStream& rng)
{
    SampleRun run{0.0, draw_oracle(model, n, rng), 0};
    RngStream fold_rng = rng.split(kKFoldStream);
    run.k_used = cv_select_k(run.dataset, k_grid, folds, metric, fold_rng);
    run.estimate = knn_regress(model.target_x(), run.dataset, static_cast<std::size_t>(run.k_used), metric);
    return run;
}

ActiveRunRecord run_active(const GenerativeModel& model, std::int64_t n, std::int64_t k, std::int64_t ell,
                           Norm metric, RngStream& rng)
{
    require_budget(n);
    const std::int64_t m = n / 2;
    if (k < 1 || k > std::max<std::int64_t>(1, m) || k > n) throw std::invalid_argument("k out of range");
    if (ell < 1) throw std::invalid_argument("ell out of range");
    const std::int64_t groups = m / ell;
    if (groups == 0) throw std::invalid_argument("exploration budget too small");
    const std::int64_t remainder = m - groups * ell;

    ActiveRunRecord rec{Dataset(model.z_dim(), model.x_dim()), {}, 0, {}, k, ell, 0.0};
    rec.dataset.reserve(static_cast<std::size_t>(n));
    const auto zs = explore(model, static_cast<std::size_t>(groups), static_cast<std::size_t>(ell), rec.dataset, rng);
    for (std::int64_t i = 0; i < groups; ++i)
        rec.group_means.push_back(
            mean_of_range(rec.dataset, static_cast<std::size_t>(i * ell), static_cast<std::size_t>(ell)));
    rec.chosen_group = closest(rec.group_means, model.target_x(), metric);
    rec.chosen_z = zs[rec.chosen_group];

    exploit(model, rec.chosen_z, static_cast<std::size_t>(n - m + remainder), rec.dataset, rng);
    rec.estimate = knn_regress(model.target_x(), rec.dataset, static_cast<std::size_t>(k), metric);
    return rec;
}

std::vector<double> ell_cv_scores(const Dataset& exploration, std::size_t groups, std::size_t repeats,
                                  std::span<const double> x0, std::span<const std::int64_t> ell_grid,
                                  std::size_t folds, Norm metric, RngStream& rng)
{
    if (repeats < 2) throw std::invalid_argument("group-size CV needs at least 2 repeats per group");
    if (groups == 0) throw std::invalid_argument("exploration budget too small");
    if (exploration.size() < groups * repeats) throw std::invalid_argument("exploration rows missing");
    const std::size_t nfolds = std::min(folds, repeats);

    std::vector<std::vector<std::size_t>> fold_of(groups);
    for (auto& labels : fold_of) labels = make_folds(repeats, nfolds, rng);

    std::vector<double> scores(ell_grid.size(), 0.0);
    std::vector<Vector> means(groups);
    std::vector<std::size_t> rows;
    for (std::size_t c = 0; c < ell_grid.size(); ++c) {
        const auto ell = static_cast<std::size_t>(ell_grid[c]);
        for (std::size_t f = 0; f < nfolds; ++f) {
            for (std::size_t i = 0; i < groups; ++i) {
                rows.clear();
                for (std::size_t l = 0; l < repeats && rows.size() < ell; ++l)
                    if (fold_of[i][l] != f) rows.push_back(i * repeats + l);
                means[i] = mean_of_rows(exploration, rows);
            }
            const std::size_t pick = closest(means, x0, metric);
            rows.clear();
            for (std::size_t l = 0; l < repeats; ++l)
                if (fold_of[pick][l] == f) rows.push_back(pick * repeats + l);
            scores[c] += distance(mean_of_rows(exploration, rows), x0, metric);
        }
        scores[c] /= static_cast<double>(nfolds);
    }
    return scores;
}

ActiveRunRecord run_active_cv(const GenerativeModel& model, std::int64_t n, std::span<const std::int64_t> ell_grid,
                              std::span<const std::int64_t> k_grid, std::size_t folds, Norm metric, RngStream& rng)
{
    require_budget(n);
    if (ell_grid.empty() || k_grid.empty()) throw std::invalid_argument("empty grid");
    if (std::any_of(ell_grid.begin(), ell_grid.end(), [](std::int64_t l) { return l < 1; }))
        throw std::invalid_argument("grid values must be positive");
    const std::int64_t m = n / 2;
    const std::int64_t ell_max = *std::max_element(ell_grid.begin(), ell_grid.end());
    if (ell_max > m) throw std::invalid_argument("largest group size exceeds the exploration budget");
    const std::int64_t groups = m / ell_max;
    if (groups == 0) throw std::invalid_argument("exploration budget too small");
    const std::int64_t remainder = m - groups * ell_max;

    ActiveRunRecord rec{Dataset(model.z_dim(), model.x_dim()), {}, 0, {}, 0, ell_max, 0.0};
    rec.dataset.reserve(static_cast<std::size_t>(n));
    const auto g = static_cast<std::size_t>(groups);
    const auto repeats = static_cast<std::size_t>(ell_max);
    const auto zs = explore(model, g, repeats, rec.dataset, rng);

    if (repeats >= 2) {
        RngStream fold_rng = rng.split(kEllFoldStream);
        const auto scores = ell_cv_scores(rec.dataset, g, repeats, model.target_x(), ell_grid, folds, metric, fold_rng);
        std::size_t best = 0;
        for (std::size_t c = 1; c < scores.size(); ++c)
            if (scores[c] < scores[best] || (scores[c] == scores[best] && ell_grid[c] < ell_grid[best])) best = c;
        rec.ell_used = ell_grid[best];
    }

    const auto ell = static_cast<std::size_t>(rec.ell_used);
    for (std::size_t i = 0; i < g; ++i) rec.group_means.push_back(mean_of_range(rec.dataset, i * repeats, ell));
    rec.chosen_group = closest(rec.group_means, model.target_x(), metric);
    rec.chosen_z = zs[rec.chosen_group];

    exploit(model, rec.chosen_z, static_cast<std::size_t>(n - m + remainder), rec.dataset, rng);
    RngStream fold_rng = rng.split(kKFoldStream);
    rec.k_used = cv_select_k(rec.dataset, k_grid, folds, metric, fold_rng);
    rec.estimate = knn_regress(model.target_x(), rec.dataset, static_cast<std::size_t>(rec.k_used), metric);
    return rec;
}

EstimateOutcome run_estimator(EstimatorKind kind, const GenerativeModel& model, const ProblemSpec& spec,
                              std::size_t folds, Norm metric, RngStream& rng)
{
    spec.validate();
    const std::int64_t n = spec.n;
    switch (kind) {
    case EstimatorKind::Passive: {
        const auto run = run_passive(model, n, theoretical_passive_k(spec), metric, rng);
        return {run.estimate, run.k_used, 0};
    }
    case EstimatorKind::PassiveCV: {
        const auto run = run_passive_cv(model, n, default_k_grid(n), folds, metric, rng);
        return {run.estimate, run.k_used, 0};
    }
    case EstimatorKind::Active: {
        const auto rec =
            run_active(model, n, theoretical_active_k(spec), theoretical_active_ell(spec), metric, rng);
        return {rec.estimate, rec.k_used, rec.ell_used};
    }
    case EstimatorKind::ActiveCV: {
        const auto rec = run_active_cv(model, n, default_ell_grid(n), default_k_grid(n), folds, metric, rng);
        return {rec.estimate, rec.k_used, rec.ell_used};
    }
    case EstimatorKind::Oracle: {
        const auto run = run_oracle(model, n, theoretical_active_k(spec), metric, rng);
        return {run.estimate, run.k_used, 0};
    }
    case EstimatorKind::OracleCV: {
        const auto run = run_oracle_cv(model, n, default_k_grid(n), folds, metric, rng);
        return {run.estimate, run.k_used, 0};
    }
    }
    throw std::invalid_argument("unknown estimator");
}

} // namespace ial
