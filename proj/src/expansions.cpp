#include "drisk/expansions.hpp"

#include "drisk/errors.hpp"
#include "drisk/quadrature.hpp"
#include "drisk/specfun.hpp"

#include <cmath>
#include <limits>

namespace drisk {

namespace sf = specfun;

double K_coefficient(double alpha2, double rho)
{
    if (!(alpha2 > 0.0)) throw DomainError("K_coefficient: alpha2 must be positive");
    if (rho > 0.0) throw DomainError("K_coefficient: rho must be nonpositive");
    if (rho == 0.0) return 0.5 * alpha2 * sf::gamma(alpha2 + 2.0);
    return std::expm1(-alpha2 * std::log1p(-rho)) / rho * sf::gamma(alpha2 + 1.0);
}

namespace {

void require_deflator(const TailModel& S, bool strict_tau)
{
    if (!S.on_unit_interval()) throw RegimeError("deflator " + S.spec() + " is not supported on (0,1)");
    const auto& m = S.meta;
    if (!m.alpha2 || !m.tau2 || !m.A)
        throw RegimeError("deflator " + S.spec() + " has no 2RV metadata for L(x) = x^alpha2 Gbar(1-1/x)");
    if (strict_tau && !(*m.tau2 < 0.0))
        throw RegimeError("Theorem 2 needs tau2 < 0; deflator " + S.spec() + " has tau2 = " + format_real(*m.tau2));
    if (*m.tau2 > 0.0) throw RegimeError("deflator " + S.spec() + " has tau2 > 0");
}

double mean_excess_eta(const TailModel& R, double x)
{
    const double Fx = R.survival(x);
    if (!(Fx > 0.0)) throw DomainError("eta: x lies beyond the support of " + R.spec());
    double integral;
    if (std::isfinite(R.x_high)) {
        integral = quad::integrate(
                       [&](double t) { return R.survival(t) / Fx; }, x, R.x_high)
                       .value;
    } else {
        // t = x + e/(1-e)
        integral = quad::integrate(
                       [&](double e) {
                           if (e >= 1.0) return 0.0;
                           const double om = 1.0 - e;
                           return R.survival(x + e / om) / Fx / (om * om);
                       },
                       0.0, 1.0)
                       .value;
    }
    return x / integral;
}

double inv_survival_level(const TailModel& R, double x)
{
    const double ls = R.log_survival(x);
    return std::exp(-ls);
}

} // namespace

double eta(const TailModel& R, double x)
{
    if (!R.is_gumbel()) throw RegimeError("eta needs a Gumbel-domain risk; " + R.spec() + " is " + to_string(R.mda));
    if (!(x > R.x_low && x < R.x_high)) throw DomainError("eta: x must be interior to the support");
    const auto& m = R.meta;
    if (m.w) return x * m.w(x);
    if (m.V && m.b && m.theta) {
        const double V = m.V(x);
        return V / (*m.theta + m.b(V));
    }
    return mean_excess_eta(R, x);
}

GumbelCoefficients gumbel_coefficients(double alpha2, double tau2, double rho)
{
    GumbelCoefficients c;
    // (Gamma(alpha2 - tau2 + 1) - Gamma(alpha2 + 1))/(tau2 Gamma(alpha2 + 1))
    c.c_A = sf::gamma_ratio_quotient(alpha2 + 1.0, tau2);
    c.c_eta = -alpha2 * (alpha2 + 1.0);
    c.c_K = K_coefficient(alpha2, rho) / sf::gamma(alpha2 + 1.0);
    return c;
}

WeibullTailCoefficients weibull_tail_coefficients(double alpha2, double tau2, double theta)
{
    WeibullTailCoefficients c;
    c.c_b = alpha2 / theta;
    if (tau2 == 0.0) {
        c.c_A = -sf::digamma(alpha2 + 1.0) - std::log(theta);
    } else {
        const double lr = sf::log_gamma(alpha2 - tau2 + 1.0) - sf::log_gamma(alpha2 + 1.0) - tau2 * std::log(theta);
        c.c_A = std::expm1(lr) / tau2;
    }
    c.c_V = -0.5 * alpha2 * (alpha2 + 1.0) * (theta + 1.0);
    return c;
}

Expansion frechet_expand(const TailModel& R, const TailModel& S, double x)
{
    if (R.mda != MdaClass::Frechet) throw RegimeError("Theorem 1 needs a Frechet-domain risk; " + R.spec() + " is " + to_string(R.mda));
    if (!S.on_unit_interval()) throw RegimeError("deflator " + S.spec() + " is not supported on (0,1)");
    const auto& m = R.meta;
    if (!m.alpha1 || !m.tau1 || !m.A_tilde) throw RegimeError(R.spec() + " lacks second-order metadata");
    if (!(x > 0.0)) throw DomainError("frechet_expand: x must be positive");
    const double a = *m.alpha1, tau = *m.tau1;
    const double Ma = mellin_moment(S, a);
    const double At = m.A_tilde(x);

    Expansion e;
    e.x = x;
    e.regime = MdaClass::Frechet;
    e.leading = Ma * R.survival(x);
    double ratio;
    if (tau == 0.0) {
        ratio = log_moment(S, a) / Ma;
        e.correction = ratio * At;
        e.info["ratio"] = ratio;
        e.info["A_star"] = At;
    } else {
        const double Mat = mellin_moment(S, a - tau);
        ratio = (Mat / Ma - 1.0) / tau;
        e.correction = ratio * At;
        e.info["A_star"] = Mat / Ma * At;
        e.info["E{S^(alpha-tau)}"] = Mat;
    }
    e.info["E{S^alpha}"] = Ma;
    e.info["Atilde"] = At;
    e.terms["Atilde"] = e.correction;
    e.second_order = e.leading * (1.0 + e.correction);
    return e;
}

DeflatorTail deflator_tail(const TailModel& S, bool strict_tau)
{
    require_deflator(S, strict_tau);
    DeflatorTail D;
    D.alpha2 = *S.meta.alpha2;
    D.tau2 = *S.meta.tau2;
    D.A = S.meta.A;
    const TailModel* sp = &S;
    D.tail = [sp](double d) { return sp->survival_below_top(d); };
    return D;
}

namespace detail {

Expansion gumbel_kernel(const TailModel& R, const DeflatorTail& D, double x)
{
    if (!R.is_gumbel()) throw RegimeError("Theorem 2 needs a Gumbel-domain risk; " + R.spec() + " is " + to_string(R.mda));
    const auto& m = R.meta;
    if (!m.rho || !m.A_tilde) throw RegimeError(R.spec() + " lacks 2ERV metadata (rho, Atilde) for Theorem 2");
    if (!(D.tau2 < 0.0)) throw RegimeError("Theorem 2 needs tau2 < 0, got " + format_real(D.tau2));
    const double a2 = D.alpha2, t2 = D.tau2;
    const double et = eta(R, x);
    const double Gbar = D.tail(1.0 / et);
    const double g1 = sf::gamma(a2 + 1.0);
    const auto c = gumbel_coefficients(a2, t2, *m.rho);
    const double A_eta = D.A(et);
    const double t = inv_survival_level(R, x);
    if (!std::isfinite(t)) throw NumericError("Fbar(" + format_real(x) + ") underflows; Atilde(1/Fbar) is not representable", t);
    const double At = m.A_tilde(t);

    Expansion e;
    e.x = x;
    e.regime = R.mda;
    e.leading = R.survival(x) * Gbar * g1;
    e.terms["A(eta)"] = c.c_A * A_eta;
    e.terms["1/eta"] = c.c_eta / et;
    e.terms["Atilde"] = c.c_K * At;
    e.correction = e.terms["A(eta)"] + e.terms["1/eta"] + e.terms["Atilde"];
    e.second_order = e.leading * (1.0 + e.correction);
    e.info["eta"] = et;
    e.info["A(eta)"] = A_eta;
    e.info["Atilde(1/Fbar)"] = At;
    e.info["K"] = K_coefficient(a2, *m.rho);
    e.info["E"] = e.correction * g1;
    return e;
}

Expansion weibull_mda_kernel(const TailModel& R, const DeflatorTail& D, double x, WeibullMdaVariant variant)
{
    if (R.mda != MdaClass::Weibull) throw RegimeError("Theorem 3 needs a Weibull-domain risk; " + R.spec() + " is " + to_string(R.mda));
    if (R.x_high != 1.0) throw RegimeError("Theorem 3 needs x_F = 1");
    const auto& m = R.meta;
    if (!m.alpha1 || !m.tau1 || !m.A_tilde) throw RegimeError(R.spec() + " lacks second-order metadata");
    if (!(x > 0.0 && x < 1.0)) throw DomainError("weibull_mda_expand: x must lie in (0,1)");
    const double a1 = *m.alpha1, t1 = *m.tau1, a2 = D.alpha2, t2 = D.tau2;
    const double d = 1.0 - x;
    const double Fbar = R.survival_below_top(d);
    const double Gbar = D.tail(d);
    const double base = a1 * sf::beta(a1, a2 + 1.0);
    const double At = m.A_tilde(1.0 / Fbar);
    const double A = D.A(1.0 / d);
    const double q1 = sf::beta_difference_quotient(a2, a1 + 1.0, t1);
    const double q2 = sf::beta_difference_quotient(a1, a2 + 1.0, t2);

    Expansion e;
    e.x = x;
    e.regime = MdaClass::Weibull;
    e.leading = Fbar * Gbar * base;
    double t_first;
    if (variant == WeibullMdaVariant::QuantileAux) {
        t_first = -a1 * a1 * a2 * q1 * At;
    } else {
        const double A_star = -a1 * a1 * At;
        t_first = a2 * q1 * A_star;
        e.info["Atilde_star(1/(1-x))"] = A_star;
    }
    e.terms["Atilde(1/Fbar)"] = t_first / base;
    e.terms["A(1/(1-x))"] = a1 * q2 * A / base;
    e.terms["1-x"] = a1 * a2 * sf::beta(a1 + 1.0, a2 + 1.0) * d / base;
    e.correction = e.terms["Atilde(1/Fbar)"] + e.terms["A(1/(1-x))"] + e.terms["1-x"];
    e.second_order = e.leading * (1.0 + e.correction);
    e.info["Atilde(1/Fbar)"] = At;
    e.info["A(1/(1-x))"] = A;
    e.info["E"] = e.correction * base;
    return e;
}

} // namespace detail

Expansion gumbel_expand(const TailModel& R, const TailModel& S, double x)
{
    return detail::gumbel_kernel(R, deflator_tail(S, true), x);
}

ShiftRatio gumbel_shift_ratio(const TailModel& R, const TailModel& S, double x, double z)
{
    if (!R.is_gumbel()) throw RegimeError("Corollary 1 needs a Gumbel-domain risk; " + R.spec() + " is " + to_string(R.mda));
    const auto& m = R.meta;
    if (!m.rho || !m.A_tilde) throw RegimeError(R.spec() + " lacks 2ERV metadata (rho, Atilde)");
    require_deflator(S, true);
    const double a2 = *S.meta.alpha2, rho = *m.rho;
    const double et = eta(R, x);
    const double At = m.A_tilde(inv_survival_level(R, x));
    const double psi = rho == 0.0 ? 0.5 * z * z : std::expm1(-rho * z) / rho;
    const double lin = rho == 0.0 ? z : std::expm1(rho * z) / rho;

    ShiftRatio out;
    auto& e = out.expansion;
    e.x = x;
    e.regime = R.mda;
    e.leading = 1.0;
    e.terms["Atilde"] = (psi + a2 * lin) * At;
    e.terms["1/eta"] = -a2 * z / et;
    e.correction = e.terms["Atilde"] + e.terms["1/eta"];
    e.second_order = 1.0 + e.correction;
    e.info["z"] = z;
    e.info["eta"] = et;
    e.info["Atilde(1/Fbar)"] = At;
    e.info["shift"] = z * x / et; // z/w(x)

    const double a_tilde = x / et;
    out.a_breve = a_tilde * (1.0 - a2 * a_tilde / x + a2 * At);
    out.A_breve = -a2 * a2 * a_tilde * a_tilde / (x * x) + At;
    return out;
}

WeibullTailExpansion weibull_tail_expand(const TailModel& R, const TailModel& S, double x)
{
    if (R.mda != MdaClass::GumbelWeibullTail)
        throw RegimeError("Corollary 2 needs a Weibull-tail risk; " + R.spec() + " is " + to_string(R.mda));
    const auto& m = R.meta;
    if (!m.theta || !m.rho_prime || !m.b || !m.V) throw RegimeError(R.spec() + " lacks Weibull-tail metadata");
    require_deflator(S, true);
    const double a2 = *S.meta.alpha2, t2 = *S.meta.tau2, th = *m.theta;
    const double V = m.V(x);
    if (!(V > 1.0)) throw DomainError("weibull_tail_expand: needs V(x) > 1");
    const auto c = weibull_tail_coefficients(a2, t2, th);
    const double bV = m.b(V), AV = S.meta.A(V);

    WeibullTailExpansion out;
    auto& e = out.expansion;
    e.x = x;
    e.regime = MdaClass::GumbelWeibullTail;
    e.leading = std::exp(-V) * S.survival_below_top(1.0 / V) * sf::gamma(a2 + 1.0) * std::pow(th, a2);
    e.terms["b(V)"] = c.c_b * bV;
    e.terms["A(V)"] = c.c_A * AV;
    e.terms["1/V"] = c.c_V / V;
    e.correction = e.terms["b(V)"] + e.terms["A(V)"] + e.terms["1/V"];
    e.second_order = e.leading * (1.0 + e.correction);
    e.info["V"] = V;
    e.info["b(V)"] = bV;
    e.info["A(V)"] = AV;

    out.theta_star = th;
    out.rho_prime_star = std::max(*m.rho_prime, -1.0);
    auto b = m.b;
    out.b_star = [b, th, a2](double y) { return b(y) + th * a2 * std::log(y) / y; };
    return out;
}

Expansion weibull_mda_expand(const TailModel& R, const TailModel& S, double x, WeibullMdaVariant variant)
{
    return detail::weibull_mda_kernel(R, deflator_tail(S, false), x, variant);
}

Expansion expand(const TailModel& R, const TailModel& S, double x)
{
    switch (R.mda) {
    case MdaClass::Frechet: return frechet_expand(R, S, x);
    case MdaClass::Weibull: return weibull_mda_expand(R, S, x);
    case MdaClass::Gumbel: return gumbel_expand(R, S, x);
    case MdaClass::GumbelWeibullTail:
        if (R.meta.rho && R.meta.A_tilde) return gumbel_expand(R, S, x);
        return weibull_tail_expand(R, S, x).expansion;
    }
    throw RegimeError("unsupported regime");
}

} // namespace drisk
