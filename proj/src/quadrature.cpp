#include "drisk/quadrature.hpp"

#include "drisk/errors.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>

namespace drisk::quad {

namespace {

using GK = boost::math::quadrature::gauss_kronrod<double, 31>;

constexpr unsigned kMaxDepth = 12;
constexpr double kLogDenormMin = -744.0;

} // namespace

Result integrate(const Integrand& f, double a, double b, double rel_tol)
{
    if (a == b) return {};
    double err = 0.0, l1 = 0.0;
    const double v = GK::integrate(f, a, b, kMaxDepth, rel_tol, &err, &l1);
    if (!std::isfinite(v))
        throw NumericError("quadrature produced a non-finite value", err);
    if (err > 100.0 * rel_tol * l1 && err > 1e-300)
        throw NumericError("quadrature did not converge", l1 > 0 ? err / l1 : err);
    return {v, err};
}

Result integrate_near_zero(const Integrand& f, double span, double rel_tol)
{
    if (!(span > 0.0)) return {};
    auto g = [&f](double y) {
        const double d = std::exp(y);
        const double v = f(d);
        return v == 0.0 ? 0.0 : v * d;
    };
    Result total;
    double hi = std::log(span);
    int quiet = 0;
    for (int j = 0; hi > kLogDenormMin; ++j) {
        const double lo = hi - 1.0;
        const Result piece = integrate(g, lo, hi, rel_tol);
        total.value += piece.value;
        total.error += piece.error;
        hi = lo;
        if (total.value != 0.0 && std::fabs(piece.value) <= 1e-18 * std::fabs(total.value)) {
            if (++quiet >= 3) break;
        } else {
            quiet = 0;
        }
        if (total.value == 0.0 && j >= 120) break;
    }
    return total;
}

} // namespace drisk::quad
