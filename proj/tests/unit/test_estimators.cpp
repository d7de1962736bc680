#include "drisk/errors.hpp"
#include "drisk/estimators.hpp"
#include "drisk/oracle.hpp"
#include "drisk/specfun.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace drisk;

namespace {

SampleSet make_set(std::vector<double> r, std::vector<double> s)
{
    SampleSet out;
    out.r = std::move(r);
    out.s = std::move(s);
    for (std::size_t i = 0; i < out.r.size(); ++i) out.x.push_back(out.r[i] * out.s[i]);
    out.sort_all();
    return out;
}

std::vector<std::size_t> k_range(std::size_t lo, std::size_t hi)
{
    std::vector<std::size_t> ks;
    for (std::size_t k = lo; k <= hi; ++k) ks.push_back(k);
    return ks;
}

bool same(double a, double b) { return (std::isnan(a) && std::isnan(b)) || a == b; }

} // namespace

TEST_SUITE("estimators")
{
    TEST_CASE("hill")
    {
        CHECK(hill({1.0, 2.0, 4.0, 8.0}, 3) == doctest::Approx(1.38629436111989061883).epsilon(1e-15));
        CHECK(hill({3.0, 3.0, 3.0, 3.0}, 3) == 0.0);
        CHECK_THROWS_AS(hill({-1.0, 2.0, 4.0}, 2), DomainError);
        CHECK_THROWS_AS(hill({1.0, 2.0}, 2), DomainError);

        // deterministic Pareto quantile grid
        const std::size_t n = 10000;
        std::vector<double> v;
        for (std::size_t i = 1; i <= n; ++i) v.push_back(std::pow(1.0 - i / (n + 1.0), -1.0 / 2.5));
        CHECK(hill(v, 500) == doctest::Approx(1.0 / 2.5).epsilon(0.02));
    }

    TEST_CASE("heavy_fit regression on a five-point Pareto grid")
    {
        std::vector<double> v;
        for (int i = 1; i <= 5; ++i) v.push_back(std::pow(1.0 - i / 6.0, -0.5));
        const auto e = heavy_fit(v, 4, 10.0);
        CHECK(e.H_kn == doctest::Approx(0.407462227423556984844).epsilon(1e-13));
        CHECK(e.rho_hat == doctest::Approx(-0.407462227423556984844).epsilon(1e-13));
        CHECK(e.tau_hat == -1.0);
        CHECK(e.delta_hat == doctest::Approx(-1.74476011259203972256).epsilon(1e-12));
        CHECK(e.alpha_hat == doctest::Approx(-10.2408445815929426709).epsilon(1e-11));
        CHECK(e.y == doctest::Approx(9.12870929175276855762).epsilon(1e-14));
        CHECK_FALSE(e.valid);
    }

    TEST_CASE("weibull_theta regression")
    {
        const auto t = weibull_theta({1, 2, 3, 4, 5, 6}, 3);
        CHECK(t.theta_hat == doctest::Approx(0.182026455034176446148).epsilon(1e-13));
        CHECK(t.b_hat == doctest::Approx(0.430726072810701562432).epsilon(1e-13));
        CHECK_THROWS(weibull_theta({1, 2, 3, 4, 5, 6}, 2));
    }

    TEST_CASE("weibull_theta on a Weibull quantile grid")
    {
        const std::size_t n = 5000;
        for (double beta : {0.5, 2.0}) {
            std::vector<double> v;
            for (std::size_t i = 1; i <= n; ++i) v.push_back(std::pow(-std::log(1.0 - i / (n + 1.0)), 1.0 / beta));
            CHECK(weibull_theta(v, n / 10).theta_hat == doctest::Approx(1.0 / beta).epsilon(0.05));
        }
    }

    TEST_CASE("weibull_pipeline regression, n = 8")
    {
        std::vector<double> r, s;
        for (int i = 1; i <= 8; ++i) {
            r.push_back(-std::log(1.0 - i / 9.0));
            const double sn = std::sin(0.5 * std::numbers::pi * i / 9.0);
            s.push_back(sn * sn);
        }
        const auto set = make_set(r, s);
        const auto e = weibull_pipeline(set, 4, 4.0, SampleUse::RS);
        CHECK(e.theta_hat == doctest::Approx(0.773039891387470384203).epsilon(1e-12));
        CHECK(e.b_hat == doctest::Approx(0.138820986844019121635).epsilon(1e-12));
        CHECK(e.V_hat == doctest::Approx(7.02618573260630795480).epsilon(1e-12));
        CHECK(e.fbar_hat == doctest::Approx(0.000888313592499559853552).epsilon(1e-11));
        CHECK(e.alpha2_hat == doctest::Approx(1.35428492110390900875).epsilon(1e-12));
        CHECK(e.gbar_hat == doctest::Approx(1.83068787071768940110).epsilon(1e-11));
        CHECK(e.A_hat == doctest::Approx(0.393293439328772776004).epsilon(1e-11));
        CHECK(e.p_hat == doctest::Approx(0.000414208050148945851492).epsilon(1e-11));

        const auto ex = weibull_pipeline(set, 4, 4.0, SampleUse::X);
        CHECK(ex.p_hat == ex.fbar_hat);
    }

    TEST_CASE("scale equivariance")
    {
        const auto smp = draw_samples(parse_model("pareto:alpha=2,theta=1"), parse_model("beta:a=1,b=2"), 2000, 3);
        const double c = 4.0; // a power of two keeps the scaling exact
        std::vector<double> scaled = smp.r_sorted;
        for (double& v : scaled) v *= c;
        for (std::size_t k : {50, 200, 600}) {
            CHECK(hill(scaled, k) == hill(smp.r_sorted, k));
            const auto a = heavy_fit(smp.r_sorted, k, 50.0);
            const auto b = heavy_fit(scaled, k, c * 50.0);
            CHECK(same(b.alpha_hat, a.alpha_hat));
            CHECK(same(b.delta_hat, a.delta_hat));
            CHECK(b.tau_hat == a.tau_hat);
            CHECK(same(b.fbar_hat, a.fbar_hat));
            CHECK(weibull_theta(scaled, k).theta_hat == weibull_theta(smp.r_sorted, k).theta_hat);
        }
    }

    TEST_CASE("RS and X agree when S is close to 1")
    {
        const auto R = parse_model("pareto:alpha=2,theta=1");
        const auto S = parse_model("beta:a=1e6,b=1");
        const auto smp = draw_samples(R, S, 5000, 42);
        const double x = exact_upper_quantile(R, S, 1e-3);
        for (std::size_t k : {200, 400, 800}) {
            const auto a = heavy_pipeline(smp, k, x, SampleUse::RS);
            const auto b = heavy_pipeline(smp, k, x, SampleUse::X);
            CHECK(a.p_hat == doctest::Approx(b.p_hat).epsilon(0.01));
        }
    }

    // Single-seed bands. One draw of n = 5000 either lands inside or not; the
    // 20-seed version in the acceptance binary is the binding check.
    TEST_CASE("heavy_RS on Pareto(2,1) x Beta(1,2), seed 42" * doctest::may_fail())
    {
        const auto R = parse_model("pareto:alpha=2,theta=1");
        const auto S = parse_model("beta:a=1,b=2");
        const auto smp = draw_samples(R, S, 5000, 42);
        const double x = exact_quantile(R, S, 1.0 - 1e-4);
        const double p = exact_tail(R, S, x);
        const auto path = estimator_path(smp, Method::HeavyRS, k_range(200, 800), x, p);
        const double m = median_p_hat(path, 200, 800);
        MESSAGE("median p_hat / p = " << m / p);
        CHECK(m / p < 1.5);
        CHECK(m / p > 1.0 / 1.5);
    }

    TEST_CASE("weibull_RS on Gamma(1,1) x Beta(1/2,1/2), seed 7" * doctest::may_fail())
    {
        const auto R = parse_model("gamma:alpha=1,lambda=1");
        const auto S = parse_model("beta:a=0.5,b=0.5");
        const auto smp = draw_samples(R, S, 5000, 7);
        const double x = specfun::inv_reg_inc_gamma_upper(0.5, 1e-5);
        const auto path = estimator_path(smp, Method::WeibullRS, k_range(300, 1500), x, 1e-5);
        const double m = median_p_hat(path, 300, 1500);
        MESSAGE("median p_hat / p = " << m / 1e-5);
        CHECK(m / 1e-5 < 2.0);
        CHECK(m / 1e-5 > 0.5);
    }

    TEST_CASE("estimator_path structure")
    {
        const auto smp = draw_samples(parse_model("pareto:alpha=2,theta=1"), parse_model("beta:a=1,b=2"), 500, 1);
        const std::vector<std::size_t> ks = {10, 20, 50, 100, 499};
        const auto a = estimator_path(smp, Method::HeavyRS, ks, 30.0);
        const auto b = estimator_path(smp, Method::HeavyX, ks, 30.0);
        CHECK(a.points.size() == ks.size());
        CHECK(a.k_grid == b.k_grid);
        for (std::size_t i = 0; i < ks.size(); ++i) CHECK(a.points[i].k == ks[i]);
        bool differ = false;
        for (std::size_t i = 0; i < ks.size(); ++i) differ |= !same(a.points[i].p_hat, b.points[i].p_hat);
        CHECK(differ);
        const auto again = estimator_path(smp, Method::HeavyRS, ks, 30.0);
        for (std::size_t i = 0; i < ks.size(); ++i) CHECK(same(again.points[i].p_hat, a.points[i].p_hat));
        CHECK(stable_k_region(5000) == std::pair<std::size_t, std::size_t>{200, 1500});
        CHECK(parse_method(to_string(Method::WeibullX)) == Method::WeibullX);
    }

    TEST_CASE("median and quantile helpers")
    {
        CHECK(median({3.0, 1.0, 2.0}) == 2.0);
        CHECK(median({4.0, 1.0, 2.0, 3.0}) == 2.5);
        CHECK(std::isnan(median({})));
        CHECK(quantile_of({1.0, 2.0, 3.0, 4.0, 5.0}, 0.25) == 2.0);
    }
}
