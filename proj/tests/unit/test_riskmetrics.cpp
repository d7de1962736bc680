#include "drisk/errors.hpp"
#include "drisk/oracle.hpp"
#include "drisk/riskmetrics.hpp"
#include "drisk/specfun.hpp"

#include <doctest.h>

#include <cmath>

using namespace drisk;
namespace sf = drisk::specfun;

TEST_SUITE("riskmetrics")
{
    TEST_CASE("var_first_order")
    {
        const auto R = parse_model("pareto:alpha=2,theta=1");
        const auto S = parse_model("beta:a=1,b=2");
        CHECK(var_risk(R, 0.99) == doctest::Approx(9.0).epsilon(1e-12));
        CHECK(var_first_order(R, S, 0.99) == doctest::Approx(9.0 / std::sqrt(6.0)).epsilon(1e-12));
        CHECK(var_first_order(R, S, 0.99) == doctest::Approx(3.6742).epsilon(1e-4));

        const auto one = parse_model("beta:a=1e6,b=1");
        CHECK(var_first_order(R, one, 0.99) == doctest::Approx(9.0).epsilon(1e-5));

        const auto P1 = parse_model("pareto:alpha=1,theta=1");
        CHECK(var_first_order(P1, S, 0.5) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
        CHECK_THROWS_AS(var_first_order(parse_model("gamma:alpha=2,lambda=1"), S, 0.9), RegimeError);
    }

    TEST_CASE("var_first_order / VaR_p(R) is constant in p")
    {
        const auto R = parse_model("burr:a=1,b=2");
        const auto S = parse_model("beta:a=2,b=3");
        const double c = std::sqrt(mellin_moment(S, 2.0));
        for (double p : {0.5, 0.9, 0.999, 1.0 - 1e-8}) CHECK(var_first_order(R, S, p) / var_risk(R, p) == doctest::Approx(c).epsilon(1e-13));
    }

    TEST_CASE("var_second_order")
    {
        const auto R = parse_model("pareto:alpha=2,theta=1");
        const auto S = parse_model("beta:a=1,b=2");
        const double p = 0.99;
        const double m2 = 1.0 / 6.0, m3 = 0.1;
        const double E = (m3 / std::pow(m2, 1.5) - 1.0) * (2.0 / 9.0) / (-2.0);
        CHECK(var_second_order(R, S, p) == doctest::Approx(var_first_order(R, S, p) * (1.0 + E)).epsilon(1e-12));

        const double q = 1.0 - 1e-6;
        const double ex = exact_quantile(R, S, q);
        CHECK(std::abs(var_second_order(R, S, q) - ex) < std::abs(var_first_order(R, S, q) - ex));

        CHECK_THROWS_AS(var_second_order(parse_model("loggamma:alpha=2,beta=1.5"), S, 0.99), RegimeError);
    }

    TEST_CASE("second-order VaR halves the first-order error for p >= 1 - 1e-4")
    {
        for (const auto& [r, s] : {std::pair{"pareto:alpha=2,theta=1", "beta:a=1,b=2"},
                                   std::pair{"burr:a=1,b=2", "beta:a=2,b=3"},
                                   std::pair{"frechet:alpha=1.5", "beta:a=0.5,b=0.5"}}) {
            const std::string rs = r;
            CAPTURE(rs);
            const auto R = parse_model(r), S = parse_model(s);
            for (double p : {1.0 - 1e-4, 1.0 - 1e-6}) {
                const double ex = exact_quantile(R, S, p);
                CHECK(std::abs(var_second_order(R, S, p) - ex) <= 0.5 * std::abs(var_first_order(R, S, p) - ex));
            }
        }
    }

    TEST_CASE("var_weibull_tail")
    {
        const auto R = parse_model("gamma:alpha=1,lambda=1");
        const auto S = parse_model("beta:a=0.5,b=0.5");
        const double p = 1.0 - 1e-6;
        const double v = var_risk(R, p);
        CHECK(v == doctest::Approx(6.0 * std::log(10.0)).epsilon(1e-10));
        const double w = var_weibull_tail(R, S, p);
        CHECK(w == doctest::Approx(v * (1.0 - 0.5 * std::log(v) / v)).epsilon(1e-12));
        CHECK(w == doctest::Approx(12.5026).epsilon(1e-5));
        // against the exact Gamma(1/2) quantile
        const double ex = sf::inv_reg_inc_gamma_upper(0.5, 1e-6);
        CHECK(std::abs(w - ex) < std::abs(v - ex));

        double prev = 1.0;
        for (double u : {1e-4, 1e-8, 1e-12}) {
            const double gap = 1.0 - var_weibull_tail(R, S, 1.0 - u) / var_risk(R, 1.0 - u);
            CHECK(gap > 0.0);
            CHECK(gap < prev);
            prev = gap;
        }
        CHECK_THROWS_AS(var_weibull_tail(R, S, 0.5), DomainError);
        CHECK_THROWS_AS(var_weibull_tail(parse_model("pareto:alpha=2,theta=1"), S, 0.99), RegimeError);
    }

    TEST_CASE("var_report")
    {
        const auto R = parse_model("pareto:alpha=2,theta=1");
        const auto S = parse_model("beta:a=1,b=2");
        const auto r = var_report(R, S, 0.999, true);
        CHECK(r.regime == MdaClass::Frechet);
        REQUIRE(r.var_X_exact);
        CHECK(r.var_X_second == var_second_order(R, S, 0.999));
        const auto w = var_report(parse_model("weibull:beta=2,c=1"), parse_model("beta:a=1,b=2"), 0.999, false);
        CHECK(!w.var_X_exact);
        CHECK(w.var_X_second == var_weibull_tail(parse_model("weibull:beta=2,c=1"), parse_model("beta:a=1,b=2"), 0.999));
    }
}
