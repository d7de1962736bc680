#include "drisk/riskmetrics.hpp"

#include "drisk/errors.hpp"
#include "drisk/oracle.hpp"

#include <cmath>

namespace drisk {

namespace {

void check_level(double p)
{
    if (!(p > 0.0 && p < 1.0)) throw DomainError("VaR: p must lie in (0,1)");
}

struct FrechetData {
    double alpha, tau, m_alpha;
};

FrechetData frechet_data(const TailModel& R, const TailModel& S)
{
    if (R.mda != MdaClass::Frechet) throw RegimeError("Frechet VaR needs a Frechet-domain risk; " + R.spec() + " is " + to_string(R.mda));
    if (!R.meta.alpha1 || !R.meta.tau1 || !R.meta.A_tilde) throw RegimeError(R.spec() + " lacks second-order metadata");
    const double a = *R.meta.alpha1;
    return {a, *R.meta.tau1, mellin_moment(S, a)};
}

} // namespace

double var_risk(const TailModel& R, double p)
{
    check_level(p);
    return R.upper_quantile(1.0 - p);
}

double var_first_order(const TailModel& R, const TailModel& S, double p)
{
    check_level(p);
    const auto d = frechet_data(R, S);
    return std::pow(d.m_alpha, 1.0 / d.alpha) * var_risk(R, p);
}

double var_second_order(const TailModel& R, const TailModel& S, double p)
{
    check_level(p);
    const auto d = frechet_data(R, S);
    if (!(d.tau < 0.0)) throw RegimeError("second-order VaR needs tau < 0; " + R.spec() + " has tau = " + format_real(d.tau));
    const double v = var_risk(R, p);
    const double m_shift = mellin_moment(S, d.alpha - d.tau);
    const double ratio = m_shift / std::pow(d.m_alpha, 1.0 - d.tau / d.alpha);
    const double E = (ratio - 1.0) * R.meta.A_tilde(v) / (d.alpha * d.tau);
    return std::pow(d.m_alpha, 1.0 / d.alpha) * v * (1.0 + E);
}

double var_weibull_tail(const TailModel& R, const TailModel& S, double p)
{
    check_level(p);
    if (R.mda != MdaClass::GumbelWeibullTail || !R.meta.theta)
        throw RegimeError("Weibull-tail VaR needs a Weibull-tail risk; " + R.spec() + " is " + to_string(R.mda));
    if (!S.meta.alpha2) throw RegimeError("deflator " + S.spec() + " has no alpha2");
    const double L = -std::log1p(-p);
    if (!(L > 1.0)) throw DomainError("Weibull-tail VaR needs p > 1 - 1/e");
    return var_risk(R, p) * (1.0 - *R.meta.theta * *S.meta.alpha2 * std::log(L) / L);
}

VarReport var_report(const TailModel& R, const TailModel& S, double p, bool with_exact)
{
    check_level(p);
    VarReport rep;
    rep.p = p;
    rep.regime = R.mda;
    rep.var_R = var_risk(R, p);
    if (R.mda == MdaClass::Frechet) {
        rep.var_X_first = var_first_order(R, S, p);
        rep.var_X_second = var_second_order(R, S, p);
    } else if (R.mda == MdaClass::GumbelWeibullTail) {
        rep.var_X_first = rep.var_R;
        rep.var_X_second = var_weibull_tail(R, S, p);
    } else {
        throw RegimeError("VaR approximations cover Frechet and Weibull-tail risks; " + R.spec() + " is " + to_string(R.mda));
    }
    if (with_exact) rep.var_X_exact = exact_quantile(R, S, p);
    return rep;
}

} // namespace drisk
