#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ial/harness.hpp"
#include "ial/records_io.hpp"

#include <cmath>
#include <stdexcept>

using namespace ial;

namespace {

ExperimentConfig small_exp1()
{
    ExperimentConfig c = default_exp1_config("n");
    c.sweep_values = {16, 64};
    c.replicates = 6;
    c.base_seed = 99;
    return c;
}

ResultRecord rec(EstimatorKind k, double value, double error)
{
    ResultRecord r;
    r.sweep_param = "n";
    r.sweep_value = value;
    r.estimator = k;
    r.error = error;
    return r;
}

} // namespace

TEST_CASE("aggregate mean and standard error")
{
    const std::vector<ResultRecord> rs{rec(EstimatorKind::Active, 16, 1.0), rec(EstimatorKind::Active, 16, 3.0),
                                       rec(EstimatorKind::Passive, 16, 5.0), rec(EstimatorKind::Active, 32, 2.0)};
    const auto rows = aggregate(rs);
    REQUIRE(rows.size() == 3);
    CHECK(rows[0].sweep_value == 16);
    CHECK(rows[0].estimator == EstimatorKind::Passive);
    CHECK(rows[0].mean_error == 5.0);
    CHECK(rows[0].std_error == 0.0);
    CHECK(rows[0].count == 1);
    CHECK(rows[1].estimator == EstimatorKind::Active);
    CHECK(rows[1].mean_error == 2.0);
    CHECK(rows[1].std_error == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(rows[1].count == 2);
    CHECK(rows[2].sweep_value == 32);
}

TEST_CASE("default grids")
{
    const auto n = default_sweep_values("n");
    REQUIRE(n.size() == 9);
    CHECK(n.front() == 16);
    CHECK(n.back() == 4096);
    const auto sg = default_sweep_values("s_g");
    CHECK(sg.size() == 10);
    CHECK(sg.front() == doctest::Approx(0.1));
    CHECK(sg.back() == 1.0);
    CHECK(default_sweep_values("d_z") == default_sweep_values("d_x"));
    CHECK(default_sweep_values("d_x").back() == 10);
    const auto sx = default_sweep_values("sigma_x");
    REQUIRE(sx.size() == 11);
    CHECK(sx.front() == doctest::Approx(0.1));
    CHECK(sx[5] == 1.0);
    CHECK(sx.back() == doctest::Approx(10.0));
    CHECK_THROWS_AS(default_sweep_values("delta"), std::invalid_argument);

    const auto sird = default_sird_sample_sizes();
    CHECK(sird.front() == 16);
    CHECK(sird.back() == 16384);

    const auto e1 = default_exp1_config();
    CHECK(e1.estimators.size() == 6);
    CHECK(e1.replicates == 1024);
    CHECK_NOTHROW(e1.validate());
    const auto e2 = default_exp2_config();
    CHECK(e2.base.d_x == 80);
    CHECK(e2.base.d_z == 3);
    CHECK(e2.replicates == 100);
    CHECK_NOTHROW(e2.validate());
    CHECK_NOTHROW(default_rate_slope_config().validate());
}

TEST_CASE("apply_sweep")
{
    const ProblemSpec base;
    CHECK(apply_sweep(base, "n", 64).n == 64);
    CHECK(apply_sweep(base, "d_z", 4).d_z == 4);
    CHECK(apply_sweep(base, "d_x", 7).d_x == 7);
    CHECK(apply_sweep(base, "s_g", 0.3).s_g == 0.3);
    CHECK(apply_sweep(base, "sigma_x", 2.5).sigma_x == 2.5);
    CHECK(apply_sweep(base, "sigma_y", 0.5).sigma_y == 0.5);
    CHECK(apply_sweep(base, "sigma_y", 0.5).n == base.n);
    CHECK_THROWS_AS(apply_sweep(base, "n", 64.5), std::invalid_argument);
    CHECK_THROWS_AS(apply_sweep(base, "d_z", 1.5), std::invalid_argument);
    CHECK_THROWS_AS(apply_sweep(base, "s_f", 0.5), std::invalid_argument);
}

TEST_CASE("config validation")
{
    auto bad = [](auto mutate) {
        ExperimentConfig c = small_exp1();
        mutate(c);
        return c;
    };
    CHECK_THROWS_WITH_AS(bad([](auto& c) { c.sweep_values.clear(); }).validate(), "sweep_values must be nonempty",
                         std::invalid_argument);
    CHECK_THROWS_AS(bad([](auto& c) { c.replicates = 0; }).validate(), std::invalid_argument);
    CHECK_THROWS_AS(bad([](auto& c) { c.estimators.clear(); }).validate(), std::invalid_argument);
    CHECK_THROWS_AS(bad([](auto& c) { c.cv_folds = 1; }).validate(), std::invalid_argument);
    CHECK_THROWS_AS(bad([](auto& c) { c.threads = 0; }).validate(), std::invalid_argument);
    CHECK_THROWS_AS(bad([](auto& c) { c.estimators.push_back(EstimatorKind::Passive); }).validate(),
                    std::invalid_argument);
    CHECK_THROWS_AS(bad([](auto& c) { c.sweep_param = "delta"; }).validate(), std::invalid_argument);
    CHECK_THROWS_AS(bad([](auto& c) { c.sweep_values = {1}; }).validate(), std::invalid_argument);
    CHECK_THROWS_AS(bad([](auto& c) {
                        c.sweep_param = "s_g";
                        c.sweep_values = {1.5};
                    }).validate(),
                    std::invalid_argument);

    ExperimentConfig e2 = default_exp2_config();
    e2.estimators = {EstimatorKind::Oracle};
    CHECK_THROWS_AS(e2.validate(), std::invalid_argument);
    e2 = default_exp2_config();
    e2.sweep_param = "sigma_x";
    CHECK_THROWS_AS(e2.validate(), std::invalid_argument);

    ExperimentConfig slope = default_rate_slope_config();
    slope.sweep_values = {64, 128};
    CHECK_THROWS_AS(slope.validate(), std::invalid_argument);
    CHECK_THROWS_AS(run_rate_slope(slope), std::invalid_argument);

    CHECK_THROWS_AS(run_exp2(small_exp1()), std::invalid_argument);
    CHECK_THROWS_AS(run_exp1(default_exp2_config()), std::invalid_argument);
}

TEST_CASE("canonical order and record contents")
{
    const ExperimentConfig c = small_exp1();
    const auto rs = run_exp1(c);
    REQUIRE(rs.size() == 2 * 6 * 6);
    std::size_t i = 0;
    for (std::size_t s = 0; s < 2; ++s)
        for (auto k : c.estimators)
            for (std::size_t r = 0; r < 6; ++r, ++i) {
                const auto& x = rs[i];
                REQUIRE(x.sweep_index == s);
                REQUIRE(x.estimator == k);
                REQUIRE(x.replicate == r);
                REQUIRE(x.experiment_id == "exp1");
                REQUIRE(x.sweep_value == c.sweep_values[s]);
                REQUIRE(x.seed == estimator_stream(c.base_seed, s, k, r).stream_id());
                REQUIRE(x.error == (x.estimate - x.target_value) * (x.estimate - x.target_value));
                REQUIRE(x.k_used >= 1);
                REQUIRE(x.wall_time_ms == 0.0);
                const bool two_stage = k == EstimatorKind::Active || k == EstimatorKind::ActiveCV;
                REQUIRE((x.ell_used > 0) == two_stage);
            }
}

TEST_CASE("estimators share the scenario within a replicate")
{
    const ExperimentConfig c = small_exp1();
    const auto rs = run_exp1(c);
    for (const auto& x : rs) {
        const auto& first = rs[x.sweep_index * 36 + x.replicate];
        REQUIRE(first.target_value == x.target_value);
    }
    CHECK(rs[0].target_value != rs[1].target_value);
}

TEST_CASE("a cell run in isolation matches the full run")
{
    const ExperimentConfig c = small_exp1();
    const auto rs = run_exp1(c);
    for (std::size_t idx : {0u, 7u, 40u, 71u}) {
        const auto& x = rs[idx];
        const ResultRecord y = run_cell(c, x.sweep_index, x.estimator, x.replicate);
        CHECK(y.estimate == x.estimate);
        CHECK(y.error == x.error);
        CHECK(y.k_used == x.k_used);
        CHECK(y.ell_used == x.ell_used);
        CHECK(y.seed == x.seed);
    }
}

TEST_CASE("byte-identical records across thread counts")
{
    ExperimentConfig c = small_exp1();
    c.threads = 1;
    const std::string one = records_csv(run_exp1(c));
    c.threads = 8;
    const std::string eight = records_csv(run_exp1(c));
    CHECK(one == eight);
    c.threads = 3;
    CHECK(records_csv(run_exp1(c)) == one);
}

TEST_CASE("different base seeds give different records")
{
    ExperimentConfig c = small_exp1();
    const auto a = run_exp1(c);
    c.base_seed = 100;
    const auto b = run_exp1(c);
    CHECK(a[0].estimate != b[0].estimate);
}

TEST_CASE("timing is recorded only on request")
{
    ExperimentConfig c = small_exp1();
    c.record_timing = true;
    c.sweep_values = {16};
    c.replicates = 2;
    for (const auto& r : run_exp1(c)) CHECK(r.wall_time_ms >= 0.0);
}

TEST_CASE("epidemic records use absolute error")
{
    ExperimentConfig c = default_exp2_config();
    c.sweep_values = {16};
    c.replicates = 2;
    const auto rs = run_exp2(c);
    REQUIRE(rs.size() == 4);
    for (const auto& r : rs) {
        CHECK(r.experiment_id == "exp2");
        CHECK(r.error == std::abs(r.estimate - r.target_value));
        CHECK(r.target_value >= 0.0);
        CHECK(r.target_value <= 1000.0);
    }
}

TEST_CASE("theoretical rate per estimator")
{
    const ProblemSpec s{2, 3, 0.8, 0.6, 1.0, 1.0, 512, 0.05};
    CHECK(theoretical_rate(EstimatorKind::PassiveCV, s).value == phi_passive(s));
    CHECK(theoretical_rate(EstimatorKind::Active, s).value == phi_active_upper(s));
    CHECK(theoretical_rate(EstimatorKind::OracleCV, s).value == phi_active_lower(s));
}

TEST_CASE("rate slope run")
{
    ExperimentConfig c = default_rate_slope_config();
    c.replicates = 16;
    c.estimators = {EstimatorKind::Passive, EstimatorKind::Active};
    const auto res = run_rate_slope(c);
    CHECK(res.records.size() == c.sweep_values.size() * 2 * 16);
    REQUIRE(res.slopes.size() == 2);
    for (const auto& sl : res.slopes) {
        CHECK(sl.median_errors.size() == c.sweep_values.size());
        CHECK(sl.theoretical_exponents.size() == c.sweep_values.size());
        CHECK(sl.theoretical_exponent == sl.theoretical_exponents.back());
        CHECK(std::isfinite(sl.fit.slope));
    }
    for (const auto& r : res.records) {
        CHECK(r.experiment_id == "rate_slope");
        CHECK(r.error == std::abs(r.estimate - r.target_value));
    }
    // Noiseless, one-dimensional, fully smooth: both rates decay like 1/n.
    CHECK(res.slopes[0].theoretical_exponent == doctest::Approx(-1.0));
    CHECK_FALSE(res.slopes[0].regime_change);

    // The noiseless oracle is exact, so there is no log error to fit.
    c.estimators = {EstimatorKind::Oracle};
    CHECK_THROWS_WITH_AS(run_rate_slope(c), "log of nonpositive", std::invalid_argument);
}
