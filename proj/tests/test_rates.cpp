#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ial/rates.hpp"
#include "support/oracles.hpp"
#include "support/specs.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

using namespace ial;

namespace {

bool close(double a, double b, double rel)
{
    return std::abs(a - b) <= rel * std::max(std::abs(a), std::abs(b));
}

} // namespace

TEST_CASE("passive rate examples")
{
    const ProblemSpec noiseless{1, 3, 1.0, 1.0, 0.0, 0.0, 256, 0.05};
    CHECK(phi_passive(noiseless) == 1.0 / 256.0);

    const ProblemSpec mid{2, 2, 1.0, 1.0, 1.0, 1.0, 256, 0.05};
    const Rate r = passive_rate(mid);
    REQUIRE(r.terms.size() == 4);
    CHECK(r.terms[0].value == doctest::Approx(0.0625).epsilon(1e-14));
    CHECK(r.terms[1].value == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(r.terms[2].value == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(r.value == doctest::Approx(std::pow(256.0, -1.0 / 6.0)).epsilon(1e-14));
    CHECK(r.value == doctest::Approx(0.39685).epsilon(1e-5));
    CHECK(r.dominating == 3);
}

TEST_CASE("active rate examples")
{
    const ProblemSpec s{1, 1, 1.0, 1.0, 0.0, 1.0, 100, 0.05};
    const Rate u = active_upper_rate(s);
    REQUIRE(u.terms.size() == 5);
    CHECK(u.terms[0].value == doctest::Approx(0.01).epsilon(1e-14));
    CHECK(u.terms[1].value == 0.0);
    CHECK(u.terms[3].value == 0.0);
    CHECK(u.terms[4].value == 0.0);
    CHECK(u.value == doctest::Approx(0.1).epsilon(1e-14));
    CHECK(u.dominating == 2);

    for (std::int64_t n : {16, 1000, 1 << 20}) {
        const ProblemSpec quiet{2, 5, 0.7, 0.4, 0.0, 0.0, n, 0.05};
        const double expect = std::pow(1.0 / static_cast<double>(n), 0.7 * 0.4 / 2.0);
        CHECK(phi_active_upper(quiet) == doctest::Approx(expect).epsilon(1e-14));
        CHECK(phi_active_lower(quiet) == doctest::Approx(expect).epsilon(1e-14));
    }

    const ProblemSpec only_y{1, 1, 1.0, 1.0, 0.0, 2.0, 400, 0.05};
    CHECK(phi_active_lower(only_y) == doctest::Approx(0.1).epsilon(1e-14));
}

TEST_CASE("upper rate needs n >= 2")
{
    ProblemSpec s;
    s.n = 1;
    CHECK_THROWS_AS(active_upper_rate(s), std::invalid_argument);
    CHECK_NOTHROW(active_lower_rate(s));
    CHECK_NOTHROW(passive_rate(s));
}

TEST_CASE("term exponents")
{
    const ProblemSpec s{3, 2, 0.5, 0.8, 1.0, 1.0, 1024, 0.05};
    const Rate p = passive_rate(s);
    CHECK(p.terms[0].n_exponent == doctest::Approx(-0.5 * 0.8 / 3.0));
    CHECK(p.terms[2].n_exponent == doctest::Approx(-0.5 / (1.0 + 3.0 / 0.8)));
    const Rate u = active_upper_rate(s);
    CHECK(u.terms[2].n_exponent == -0.5);
    CHECK(u.terms[1].n_exponent == doctest::Approx(-0.5 / 2.0));
}

TEST_CASE("matches the independent evaluation on random specs")
{
    RngStream rng(61, 0);
    for (int i = 0; i < 5000; ++i) {
        const ProblemSpec s = testing_support::random_spec(rng);
        CAPTURE(i);
        REQUIRE(close(phi_passive(s), oracle::phi_passive(s), 1e-12));
        REQUIRE(close(phi_active_upper(s), oracle::phi_active_upper(s), 1e-12));
        REQUIRE(close(phi_active_lower(s), oracle::phi_active_lower(s), 1e-12));
        REQUIRE(phi_active_lower(s) <= phi_active_upper(s));
    }
}

TEST_CASE("term bookkeeping")
{
    RngStream rng(62, 0);
    for (int i = 0; i < 2000; ++i) {
        const ProblemSpec s = testing_support::random_spec(rng);
        for (const Rate& r : {passive_rate(s), active_upper_rate(s), active_lower_rate(s)}) {
            double mx = 0.0;
            for (const auto& t : r.terms) {
                REQUIRE(t.value >= 0.0);
                REQUIRE(t.n_exponent < 0.0);
                mx = std::max(mx, t.value);
            }
            REQUIRE(r.value == mx);
            REQUIRE(r.terms[r.dominating].value == r.value);
        }
        const RateReport rep = rate_report(s);
        REQUIRE(rep.phi_passive == phi_passive(s));
        REQUIRE(rep.passive_term == passive_rate(s).dominating);
        REQUIRE(rep.active_upper_term == active_upper_rate(s).dominating);
        REQUIRE(rep.active_lower_term == active_lower_rate(s).dominating);
    }
}

TEST_CASE("active lower rate never exceeds the passive rate when every base is below one")
{
    // With sigma <= 1 and n >= 2 each base is < 1, so a larger exponent means
    // a smaller term; each lower-rate term has a passive counterpart with a
    // smaller exponent.
    RngStream rng(63, 0);
    for (int i = 0; i < 1000; ++i) {
        ProblemSpec s = testing_support::random_spec(rng);
        s.sigma_x = std::min(s.sigma_x, 1.0);
        s.sigma_y = std::min(s.sigma_y, 1.0);
        REQUIRE(phi_active_lower(s) <= phi_passive(s) * (1.0 + 1e-12));
    }
}

TEST_CASE("monotone in n and in the noise levels")
{
    RngStream rng(64, 0);
    for (int i = 0; i < 1000; ++i) {
        const ProblemSpec s = testing_support::random_spec(rng);
        ProblemSpec more_n = s;
        more_n.n = s.n * 2;
        // ln n / n decreases for n >= 3.
        if (s.n >= 3) {
            REQUIRE(phi_active_upper(more_n) <= phi_active_upper(s));
        }
        REQUIRE(phi_passive(more_n) <= phi_passive(s));
        REQUIRE(phi_active_lower(more_n) <= phi_active_lower(s));

        ProblemSpec louder = s;
        louder.sigma_x = s.sigma_x * 1.5 + 0.01;
        louder.sigma_y = s.sigma_y * 1.5 + 0.01;
        if (s.n >= 2) REQUIRE(phi_active_upper(louder) >= phi_active_upper(s));
        REQUIRE(phi_passive(louder) >= phi_passive(s));
        REQUIRE(phi_active_lower(louder) >= phi_active_lower(s));
    }
}

TEST_CASE("strictly decreasing passive rate")
{
    ProblemSpec s{2, 3, 0.9, 0.6, 0.5, 2.0, 16, 0.05};
    double prev = phi_passive(s);
    for (int e = 5; e <= 24; ++e) {
        s.n = std::int64_t{1} << e;
        const double cur = phi_passive(s);
        CHECK(cur < prev);
        prev = cur;
    }
}

TEST_CASE("two written forms of the third passive exponent agree")
{
    RngStream rng(65, 0);
    for (int i = 0; i < 1000; ++i) {
        const ProblemSpec s = testing_support::random_spec(rng);
        const double a = s.s_f / (2.0 * s.s_f + s.d_z / s.s_g);
        const double b = s.s_f * s.s_g / (2.0 * s.s_f * s.s_g + s.d_z);
        REQUIRE(std::abs(a - b) <= 1e-14);
        REQUIRE(std::abs(-passive_rate(s).terms[2].n_exponent - b) <= 1e-14);
    }
}

TEST_CASE("log-log slope fit")
{
    std::vector<ScalingPoint> exact{{16, 0.25}, {64, 0.125}, {256, 0.0625}};
    CHECK(fit_loglog_slope(exact).slope == doctest::Approx(-0.5).epsilon(1e-12));

    std::vector<ScalingPoint> two{{10, 3.0}, {1000, 0.03}};
    const SlopeFit f = fit_loglog_slope(two);
    CHECK(f.slope == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(f.intercept + f.slope * std::log(10.0) == doctest::Approx(std::log(3.0)).epsilon(1e-12));

    // Closed-form OLS via normal equations.
    RngStream rng(66, 0);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<ScalingPoint> pts;
        const int count = 3 + static_cast<int>(rng.uniform_index(10));
        for (int i = 0; i < count; ++i)
            pts.push_back({std::int64_t{1} << (i + 1), std::exp(sample_normal(rng))});
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (const auto& p : pts) {
            const double x = std::log(static_cast<double>(p.n));
            const double y = std::log(p.error);
            sx += x;
            sy += y;
            sxx += x * x;
            sxy += x * y;
        }
        const double slope = (count * sxy - sx * sy) / (count * sxx - sx * sx);
        const double icpt = (sy - slope * sx) / count;
        const SlopeFit fit = fit_loglog_slope(pts);
        REQUIRE(fit.slope == doctest::Approx(slope).epsilon(1e-10));
        REQUIRE(fit.intercept == doctest::Approx(icpt).epsilon(1e-10));
    }
}

TEST_CASE("slope fit errors")
{
    std::vector<ScalingPoint> zero{{16, 0.0}, {64, 0.1}};
    CHECK_THROWS_WITH_AS(fit_loglog_slope(zero), "log of nonpositive", std::invalid_argument);
    std::vector<ScalingPoint> neg{{16, -1.0}, {64, 0.1}};
    CHECK_THROWS_WITH_AS(fit_loglog_slope(neg), "log of nonpositive", std::invalid_argument);
    std::vector<ScalingPoint> one{{16, 0.1}};
    CHECK_THROWS_AS(fit_loglog_slope(one), std::invalid_argument);
    std::vector<ScalingPoint> same{{16, 0.1}, {16, 0.2}};
    CHECK_THROWS_AS(fit_loglog_slope(same), std::invalid_argument);
}
