#include "drisk/distributions.hpp"

#include "drisk/errors.hpp"
#include "drisk/quadrature.hpp"
#include "drisk/specfun.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <sstream>

namespace drisk {

namespace sf = specfun;

std::string to_string(MdaClass m)
{
    switch (m) {
    case MdaClass::Frechet: return "Frechet";
    case MdaClass::Gumbel: return "Gumbel";
    case MdaClass::GumbelWeibullTail: return "GumbelWeibullTail";
    case MdaClass::Weibull: return "Weibull";
    }
    return "?";
}

double Distribution::log_survival(double x) const { return std::log(survival(x)); }

double Distribution::upper_quantile(double u) const { return solve_upper_quantile(u); }

double Distribution::quantile(double p) const { return upper_quantile(1.0 - p); }

double Distribution::solve_upper_quantile(double u) const
{
    if (u >= 1.0) return x_low;
    if (u <= 0.0) return x_high;
    const double target = std::log(u);
    double lo = x_low, hi;
    if (std::isfinite(x_high)) {
        hi = x_high;
    } else {
        hi = std::max(1.0, 2.0 * std::fabs(x_low) + 1.0);
        while (log_survival(hi) > target) {
            lo = hi;
            hi *= 2.0;
            if (!std::isfinite(hi)) throw NumericError("upper quantile bracket diverged", u);
        }
    }
    double x = 0.5 * (lo + hi);
    for (int it = 0; it < 200; ++it) {
        const double g = log_survival(x) - target;
        if (std::fabs(g) <= 1e-13) return x;
        if (g > 0.0) lo = x; else hi = x;
        // d/dx log Fbar = -f/Fbar
        const double slope = -std::exp(log_density(x) - log_survival(x));
        double next = (slope < 0.0 && std::isfinite(slope)) ? x - g / slope : 0.5 * (lo + hi);
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        if (next == x || hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * std::fabs(x)) return next;
        x = next;
    }
    return x;
}

double TailModel::quantile(double p) const
{
    if (!(p >= 0.0 && p <= 1.0)) throw DomainError("quantile: p must lie in [0,1]");
    return dist->quantile(p);
}

double TailModel::upper_quantile(double u) const
{
    if (!(u >= 0.0 && u <= 1.0)) throw DomainError("upper_quantile: u must lie in [0,1]");
    return dist->upper_quantile(u);
}

double TailModel::density(double x) const
{
    if (x < x_low || x > x_high) return 0.0;
    return std::exp(dist->log_density(x));
}

double TailModel::param(const std::string& key) const
{
    for (const auto& [k, v] : params)
        if (k == key) return v;
    throw DomainError("model " + family + " has no parameter " + key);
}

std::string format_real(double v)
{
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

std::string TailModel::spec() const
{
    std::string s = family;
    for (std::size_t i = 0; i < params.size(); ++i) {
        s += i == 0 ? ':' : ',';
        s += params[i].first + "=" + format_real(params[i].second);
    }
    return s;
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// ---------------------------------------------------------------- Frechet MDA

class Pareto final : public Distribution {
public:
    Pareto(double a, double t) : Distribution(0.0, kInf), alpha(a), theta(t) {}
    double survival(double x) const override { return x <= 0 ? 1.0 : std::exp(log_survival(x)); }
    double log_survival(double x) const override { return x <= 0 ? 0.0 : -alpha * std::log1p(x / theta); }
    double cdf(double x) const override { return x <= 0 ? 0.0 : -std::expm1(log_survival(x)); }
    double upper_quantile(double u) const override { return theta * std::expm1(-std::log(u) / alpha); }
    double quantile(double p) const override { return theta * std::expm1(-std::log1p(-p) / alpha); }
    double log_density(double x) const override
    {
        return std::log(alpha / theta) - (alpha + 1.0) * std::log1p(x / theta);
    }
    double alpha, theta;
};

class Frechet final : public Distribution {
public:
    explicit Frechet(double a) : Distribution(0.0, kInf), alpha(a) {}
    double survival(double x) const override { return x <= 0 ? 1.0 : -std::expm1(-std::pow(x, -alpha)); }
    double cdf(double x) const override { return x <= 0 ? 0.0 : std::exp(-std::pow(x, -alpha)); }
    double upper_quantile(double u) const override { return std::pow(-std::log1p(-u), -1.0 / alpha); }
    double quantile(double p) const override { return std::pow(-std::log(p), -1.0 / alpha); }
    double log_density(double x) const override
    {
        return std::log(alpha) - (alpha + 1.0) * std::log(x) - std::pow(x, -alpha);
    }
    double alpha;
};

class Burr final : public Distribution {
public:
    Burr(double a_, double b_) : Distribution(0.0, kInf), a(a_), b(b_) {}
    double log_survival(double x) const override { return x <= 0 ? 0.0 : -a * std::log1p(std::pow(x, b)); }
    double survival(double x) const override { return std::exp(log_survival(x)); }
    double cdf(double x) const override { return -std::expm1(log_survival(x)); }
    double upper_quantile(double u) const override { return std::pow(std::expm1(-std::log(u) / a), 1.0 / b); }
    double quantile(double p) const override { return std::pow(std::expm1(-std::log1p(-p) / a), 1.0 / b); }
    double log_density(double x) const override
    {
        return std::log(a * b) + (b - 1.0) * std::log(x) - (a + 1.0) * std::log1p(std::pow(x, b));
    }
    double a, b;
};

class HallWeiss final : public Distribution {
public:
    HallWeiss(double a, double t) : Distribution(1.0, kInf), alpha(a), tau(t) {}
    double survival(double x) const override
    {
        return x <= 1.0 ? 1.0 : 0.5 * std::pow(x, -alpha) * (1.0 + std::pow(x, tau));
    }
    double log_survival(double x) const override
    {
        return x <= 1.0 ? 0.0 : std::log(0.5) - alpha * std::log(x) + std::log1p(std::pow(x, tau));
    }
    double log_density(double x) const override
    {
        return std::log(0.5 * (alpha * std::pow(x, -alpha - 1.0) + (alpha - tau) * std::pow(x, tau - alpha - 1.0)));
    }
    double alpha, tau;
};

class LogGamma final : public Distribution {
public:
    LogGamma(double a, double b) : Distribution(1.0, kInf), alpha(a), beta(b) {}
    double survival(double x) const override
    {
        return x <= 1.0 ? 1.0 : sf::reg_inc_gamma_upper(beta, alpha * std::log(x));
    }
    double cdf(double x) const override
    {
        return x <= 1.0 ? 0.0 : sf::reg_inc_gamma_lower(beta, alpha * std::log(x));
    }
    double upper_quantile(double u) const override
    {
        return std::exp(sf::inv_reg_inc_gamma_upper(beta, u) / alpha);
    }
    double quantile(double p) const override { return std::exp(sf::inv_reg_inc_gamma_lower(beta, p) / alpha); }
    double log_density(double x) const override
    {
        const double lx = std::log(x);
        return beta * std::log(alpha) - sf::log_gamma(beta) + (beta - 1.0) * std::log(lx) - (alpha + 1.0) * lx;
    }
    double alpha, beta;
};

class InvGamma final : public Distribution {
public:
    InvGamma(double a, double b) : Distribution(0.0, kInf), alpha(a), beta(b) {}
    double survival(double x) const override { return x <= 0 ? 1.0 : sf::reg_inc_gamma_lower(alpha, beta / x); }
    double cdf(double x) const override { return x <= 0 ? 0.0 : sf::reg_inc_gamma_upper(alpha, beta / x); }
    double upper_quantile(double u) const override { return beta / sf::inv_reg_inc_gamma_lower(alpha, u); }
    double quantile(double p) const override { return beta / sf::inv_reg_inc_gamma_upper(alpha, p); }
    double log_density(double x) const override
    {
        return alpha * std::log(beta) - sf::log_gamma(alpha) - (alpha + 1.0) * std::log(x) - beta / x;
    }
    double alpha, beta;
};

class AbsT final : public Distribution {
public:
    explicit AbsT(double v_) : Distribution(0.0, kInf), v(v_) {}
    double survival(double x) const override
    {
        if (x <= 0) return 1.0;
        const double x2 = x * x;
        if (x2 > v) return sf::reg_inc_beta(0.5 * v, 0.5, v / (v + x2));
        return sf::reg_inc_beta_complement(0.5, 0.5 * v, x2 / (v + x2));
    }
    double cdf(double x) const override
    {
        if (x <= 0) return 0.0;
        const double x2 = x * x;
        if (x2 > v) return sf::reg_inc_beta_complement(0.5 * v, 0.5, v / (v + x2));
        return sf::reg_inc_beta(0.5, 0.5 * v, x2 / (v + x2));
    }
    double upper_quantile(double u) const override
    {
        if (u <= 0.5) {
            const double z = sf::inv_reg_inc_beta(0.5 * v, 0.5, u);
            return std::sqrt(v * (1.0 - z) / z);
        }
        const double w = sf::inv_reg_inc_beta_complement(0.5, 0.5 * v, u);
        return std::sqrt(v * w / (1.0 - w));
    }
    double log_density(double x) const override
    {
        return std::log(2.0) + sf::log_gamma(0.5 * (v + 1.0)) - sf::log_gamma(0.5 * v)
               - 0.5 * std::log(v * M_PI) - 0.5 * (v + 1.0) * std::log1p(x * x / v);
    }
    double v;
};

// R = 1/R0 - 1 with R0 ~ beta(b, a); density x^{a-1}(1+x)^{-a-b}/B(a,b).
class Beta2 final : public Distribution {
public:
    Beta2(double a_, double b_) : Distribution(0.0, kInf), a(a_), b(b_) {}
    double survival(double x) const override
    {
        if (x <= 0) return 1.0;
        if (x >= 1.0) return sf::reg_inc_beta(b, a, 1.0 / (1.0 + x));
        return sf::reg_inc_beta_complement(a, b, x / (1.0 + x));
    }
    double cdf(double x) const override
    {
        if (x <= 0) return 0.0;
        if (x >= 1.0) return sf::reg_inc_beta_complement(b, a, 1.0 / (1.0 + x));
        return sf::reg_inc_beta(a, b, x / (1.0 + x));
    }
    double upper_quantile(double u) const override
    {
        if (u <= 0.5) {
            const double z = sf::inv_reg_inc_beta(b, a, u);
            return (1.0 - z) / z;
        }
        const double w = sf::inv_reg_inc_beta_complement(a, b, u);
        return w / (1.0 - w);
    }
    double log_density(double x) const override
    {
        return (a - 1.0) * std::log(x) - (a + b) * std::log1p(x) - sf::log_beta(a, b);
    }
    double a, b;
};

class FDist final : public Distribution {
public:
    FDist(double m_, double n_) : Distribution(0.0, kInf), m(m_), n(n_) {}
    double survival(double x) const override
    {
        if (x <= 0) return 1.0;
        const double mx = m * x;
        if (mx >= n) return sf::reg_inc_beta(0.5 * n, 0.5 * m, n / (n + mx));
        return sf::reg_inc_beta_complement(0.5 * m, 0.5 * n, mx / (n + mx));
    }
    double cdf(double x) const override
    {
        if (x <= 0) return 0.0;
        const double mx = m * x;
        if (mx >= n) return sf::reg_inc_beta_complement(0.5 * n, 0.5 * m, n / (n + mx));
        return sf::reg_inc_beta(0.5 * m, 0.5 * n, mx / (n + mx));
    }
    double upper_quantile(double u) const override
    {
        if (u <= 0.5) {
            const double z = sf::inv_reg_inc_beta(0.5 * n, 0.5 * m, u);
            return n * (1.0 - z) / (m * z);
        }
        const double w = sf::inv_reg_inc_beta_complement(0.5 * m, 0.5 * n, u);
        return n * w / (m * (1.0 - w));
    }
    double log_density(double x) const override
    {
        return -sf::log_beta(0.5 * m, 0.5 * n) + 0.5 * m * std::log(m / n) + (0.5 * m - 1.0) * std::log(x)
               - 0.5 * (m + n) * std::log1p(m * x / n);
    }
    double m, n;
};

// ---------------------------------------------------------------- Weibull MDA

class Beta final : public Distribution {
public:
    Beta(double a_, double b_) : Distribution(0.0, 1.0), a(a_), b(b_), lB(sf::log_beta(a_, b_)) {}
    double survival(double x) const override
    {
        if (x <= 0) return 1.0;
        if (x >= 1) return 0.0;
        return sf::reg_inc_beta_complement(a, b, x);
    }
    double cdf(double x) const override
    {
        if (x <= 0) return 0.0;
        if (x >= 1) return 1.0;
        return sf::reg_inc_beta(a, b, x);
    }
    double upper_quantile(double u) const override { return sf::inv_reg_inc_beta_complement(a, b, u); }
    double quantile(double p) const override { return sf::inv_reg_inc_beta(a, b, p); }
    double log_density(double x) const override
    {
        return (a - 1.0) * std::log(x) + (b - 1.0) * std::log1p(-x) - lB;
    }
    double survival_below_top(double d) const override
    {
        if (d <= 0) return 0.0;
        if (d >= 1) return 1.0;
        return sf::reg_inc_beta(b, a, d);
    }
    double log_density_below_top(double d) const override
    {
        return (a - 1.0) * std::log1p(-d) + (b - 1.0) * std::log(d) - lB;
    }
    double a, b, lB;
};

// Fbar(1 - 1/x) = (1 + x^b)^{-a}; the mass 1 - 2^{-a} sits at 0.
class ReverseBurr final : public Distribution {
public:
    ReverseBurr(double a_, double b_) : Distribution(0.0, 1.0), a(a_), b(b_) {}
    double survival_below_top(double d) const override
    {
        if (d <= 0) return 0.0;
        if (d >= 1) return std::exp2(-a);
        return std::exp(-a * std::log1p(std::pow(d, -b)));
    }
    double survival(double x) const override
    {
        if (x < 0) return 1.0;
        if (x >= 1) return 0.0;
        return survival_below_top(1.0 - x);
    }
    double upper_quantile(double u) const override
    {
        if (u >= std::exp2(-a)) return 0.0;
        if (u <= 0) return 1.0;
        return 1.0 - std::pow(std::expm1(-std::log(u) / a), -1.0 / b);
    }
    double quantile(double p) const override { return upper_quantile(1.0 - p); }
    double log_density_below_top(double d) const override
    {
        return std::log(a * b) - (b + 1.0) * std::log(d) - (a + 1.0) * std::log1p(std::pow(d, -b));
    }
    double log_density(double x) const override { return log_density_below_top(1.0 - x); }
    double atom_at_low() const override { return -std::expm1(-a * std::log(2.0)); }
    double a, b;
};

// ----------------------------------------------------------------- Gumbel MDA

class Gamma final : public Distribution {
public:
    Gamma(double a, double l) : Distribution(0.0, kInf), alpha(a), lambda(l) {}
    double survival(double x) const override { return x <= 0 ? 1.0 : sf::reg_inc_gamma_upper(alpha, lambda * x); }
    double cdf(double x) const override { return x <= 0 ? 0.0 : sf::reg_inc_gamma_lower(alpha, lambda * x); }
    double upper_quantile(double u) const override { return sf::inv_reg_inc_gamma_upper(alpha, u) / lambda; }
    double quantile(double p) const override { return sf::inv_reg_inc_gamma_lower(alpha, p) / lambda; }
    double log_density(double x) const override
    {
        return alpha * std::log(lambda) - sf::log_gamma(alpha) + (alpha - 1.0) * std::log(x) - lambda * x;
    }
    double alpha, lambda;
};

class AbsNormal final : public Distribution {
public:
    AbsNormal() : Distribution(0.0, kInf) {}
    double survival(double x) const override { return x <= 0 ? 1.0 : sf::erfc(x / M_SQRT2); }
    double cdf(double x) const override { return x <= 0 ? 0.0 : std::erf(x / M_SQRT2); }
    double upper_quantile(double u) const override { return M_SQRT2 * sf::erfc_inv(u); }
    double log_density(double x) const override { return 0.5 * std::log(2.0 / M_PI) - 0.5 * x * x; }
};

class Weibull final : public Distribution {
public:
    Weibull(double b, double c_) : Distribution(0.0, kInf), beta(b), c(c_) {}
    double log_survival(double x) const override { return x <= 0 ? 0.0 : -c * std::pow(x, beta); }
    double survival(double x) const override { return std::exp(log_survival(x)); }
    double cdf(double x) const override { return -std::expm1(log_survival(x)); }
    double upper_quantile(double u) const override { return std::pow(-std::log(u) / c, 1.0 / beta); }
    double quantile(double p) const override { return std::pow(-std::log1p(-p) / c, 1.0 / beta); }
    double log_density(double x) const override
    {
        return std::log(c * beta) + (beta - 1.0) * std::log(x) - c * std::pow(x, beta);
    }
    double beta, c;
};

// Fbar = exp(-x^beta (C + D x^{-alpha})).
class PerturbedWeibull final : public Distribution {
public:
    PerturbedWeibull(double b, double a, double C_, double D_)
        : Distribution(0.0, kInf), beta(b), alpha(a), C(C_), D(D_) {}
    double V(double x) const { return C * std::pow(x, beta) + D * std::pow(x, beta - alpha); }
    double log_survival(double x) const override { return x <= 0 ? 0.0 : -V(x); }
    double survival(double x) const override { return std::exp(log_survival(x)); }
    double cdf(double x) const override { return -std::expm1(log_survival(x)); }
    double log_density(double x) const override
    {
        const double dv = C * beta * std::pow(x, beta - 1.0) + D * (beta - alpha) * std::pow(x, beta - alpha - 1.0);
        return std::log(dv) - V(x);
    }
    double beta, alpha, C, D;
};

class BenktanderII final : public Distribution {
public:
    BenktanderII(double b, double l) : Distribution(1.0, kInf), beta(b), lambda(l) {}
    double V(double x) const { return (1.0 - beta) * std::log(x) + lambda / beta * std::expm1(beta * std::log(x)); }
    double log_survival(double x) const override { return x <= 1.0 ? 0.0 : -V(x); }
    double survival(double x) const override { return std::exp(log_survival(x)); }
    double cdf(double x) const override { return -std::expm1(log_survival(x)); }
    double log_density(double x) const override
    {
        return std::log((1.0 - beta) / x + lambda * std::pow(x, beta - 1.0)) - V(x);
    }
    double beta, lambda;
};

class Logistic final : public Distribution {
public:
    Logistic() : Distribution(0.0, kInf) {}
    double log_survival(double x) const override
    {
        return x <= 0 ? 0.0 : std::log(2.0) - x - std::log1p(std::exp(-x));
    }
    double survival(double x) const override { return std::exp(log_survival(x)); }
    double cdf(double x) const override { return x <= 0 ? 0.0 : -std::expm1(-x) / (1.0 + std::exp(-x)); }
    double upper_quantile(double u) const override { return std::log1p(2.0 * (1.0 - u) / u); }
    double log_density(double x) const override { return std::log(2.0) - x - 2.0 * std::log1p(std::exp(-x)); }
};

// Gumbel law conditioned on (0, inf): Fbar = (1 - exp(-e^{-x}))/(1 - e^{-1}).
class TruncatedGumbel final : public Distribution {
public:
    TruncatedGumbel() : Distribution(0.0, kInf), p(-std::expm1(-1.0)) {}
    double survival(double x) const override { return x <= 0 ? 1.0 : -std::expm1(-std::exp(-x)) / p; }
    double log_survival(double x) const override
    {
        return x <= 0 ? 0.0 : std::log(-std::expm1(-std::exp(-x))) - std::log(p);
    }
    double cdf(double x) const override
    {
        return x <= 0 ? 0.0 : (std::exp(-std::exp(-x)) - std::exp(-1.0)) / p;
    }
    double upper_quantile(double u) const override { return -std::log(-std::log1p(-p * u)); }
    double log_density(double x) const override { return -x - std::exp(-x) - std::log(p); }
    double p;
};

// Fbar = exp(-c x/(1-x)) on (0,1).
class E1c final : public Distribution {
public:
    explicit E1c(double c_) : Distribution(0.0, 1.0), c(c_) {}
    double survival_below_top(double d) const override
    {
        if (d <= 0) return 0.0;
        if (d >= 1) return 1.0;
        return std::exp(-c * (1.0 - d) / d);
    }
    double survival(double x) const override
    {
        if (x <= 0) return 1.0;
        if (x >= 1) return 0.0;
        return std::exp(log_survival(x));
    }
    double log_survival(double x) const override { return x <= 0 ? 0.0 : -c * x / (1.0 - x); }
    double cdf(double x) const override { return -std::expm1(log_survival(x)); }
    double upper_quantile(double u) const override
    {
        const double L = -std::log(u);
        return L / (c + L);
    }
    double log_density(double x) const override
    {
        return std::log(c) - 2.0 * std::log1p(-x) - c * x / (1.0 - x);
    }
    double log_density_below_top(double d) const override
    {
        return std::log(c) - 2.0 * std::log(d) - c * (1.0 - d) / d;
    }
    double c;
};

// ------------------------------------------------------------ catalog plumbing

using Params = std::map<std::string, double>;

double need(const Params& p, const std::string& family, const std::string& key)
{
    auto it = p.find(key);
    if (it == p.end()) throw DomainError(family + ": missing parameter " + key);
    if (!std::isfinite(it->second)) throw DomainError(family + ": parameter " + key + " must be finite");
    return it->second;
}

double need_positive(const Params& p, const std::string& family, const std::string& key)
{
    const double v = need(p, family, key);
    if (!(v > 0.0)) throw DomainError(family + ": parameter " + key + " must be positive");
    return v;
}

// Weibull-tail helpers shared by the Gumbel families.
void wire_weibull_tail(TailModel& m, double theta, double rho_prime, RealMap b)
{
    auto d = m.dist;
    m.meta.theta = theta;
    m.meta.rho_prime = rho_prime;
    m.meta.b = std::move(b);
    m.meta.V = [d](double x) { return -d->log_survival(x); };
    m.meta.ell = [d, theta](double y) { return d->upper_quantile(std::exp(-y)) / std::pow(y, theta); };
}

void wire_deflator(TailModel& m, double alpha2, double tau2, RealMap A)
{
    auto d = m.dist;
    m.meta.alpha2 = alpha2;
    m.meta.tau2 = tau2;
    m.meta.A = std::move(A);
    m.meta.L = [d, alpha2](double x) { return std::pow(x, alpha2) * d->survival_below_top(1.0 / x); };
}

const std::vector<FamilyInfo> kCatalog = {
    {"pareto", {"alpha", "theta"}, "Fbar=(theta/(x+theta))^alpha"},
    {"frechet", {"alpha"}, "Fbar=1-exp(-x^-alpha)"},
    {"burr", {"a", "b"}, "Fbar=(1+x^b)^-a"},
    {"hallweiss", {"alpha", "tau"}, "Fbar=x^-alpha(1+x^tau)/2, x>=1, tau<0"},
    {"loggamma", {"alpha", "beta"}, "f=alpha^beta/Gamma(beta)(log x)^(beta-1)x^(-alpha-1), x>=1"},
    {"invgamma", {"alpha", "beta"}, "f=beta^alpha/Gamma(alpha)x^(-alpha-1)exp(-beta/x)"},
    {"abst", {"v"}, "|T| with T Student t on v degrees of freedom"},
    {"fdist", {"m", "n"}, "Fisher F(m,n)"},
    {"beta2", {"a", "b"}, "1/R0-1 with R0~beta(b,a)"},
    {"beta", {"a", "b"}, "density x^(a-1)(1-x)^(b-1)/B(a,b) on (0,1)"},
    {"reverseburr", {"a", "b"}, "Fbar(1-1/x)=(1+x^b)^-a on [0,1), atom at 0"},
    {"gamma", {"alpha", "lambda"}, "density lambda^alpha x^(alpha-1)exp(-lambda x)/Gamma(alpha)"},
    {"absnormal", {}, "|N(0,1)|"},
    {"weibull", {"beta", "c"}, "Fbar=exp(-c x^beta)"},
    {"perturbedweibull", {"beta", "alpha", "c", "d"}, "Fbar=exp(-x^beta(c+d x^-alpha)), 0<alpha<beta, d>=0"},
    {"benktander2", {"beta", "lambda"}, "Fbar=x^-(1-beta)exp(-lambda/beta(x^beta-1)), x>=1, 0<beta<1"},
    {"logistic", {}, "Fbar=2/(1+e^x), x>0"},
    {"truncatedgumbel", {}, "Fbar=(1-exp(-e^-x))/(1-e^-1), x>0"},
    {"truncgumbelunit", {}, "same law as truncatedgumbel"},
    {"e1c", {"c"}, "Fbar=exp(-c x/(1-x)) on (0,1)"},
};

std::string canonical_family(std::string name)
{
    std::string s;
    for (char ch : name)
        if (ch != '-' && ch != '_' && ch != ' ') s += static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
    static const std::map<std::string, std::string> aliases = {
        {"benktanderii", "benktander2"}, {"f", "fdist"},           {"absolutet", "abst"},
        {"inversegamma", "invgamma"},    {"absolutenormal", "absnormal"}, {"truncgumbel", "truncatedgumbel"},
        {"reverseburr", "reverseburr"},  {"betaii", "beta2"},
    };
    auto it = aliases.find(s);
    return it == aliases.end() ? s : it->second;
}

} // namespace

const std::vector<FamilyInfo>& catalog() { return kCatalog; }

std::string catalog_listing()
{
    std::ostringstream os;
    os << "supported families:\n";
    for (const auto& f : kCatalog) {
        os << "  " << f.name;
        for (std::size_t i = 0; i < f.keys.size(); ++i) os << (i ? "," : ":") << f.keys[i] << "=<v>";
        os << "    " << f.description << "\n";
    }
    return os.str();
}

TailModel make_model(const std::string& family_in, const std::map<std::string, double>& params_in)
{
    const std::string family = canonical_family(family_in);
    const auto info = std::find_if(kCatalog.begin(), kCatalog.end(), [&](const FamilyInfo& f) { return f.name == family; });
    if (info == kCatalog.end()) throw CatalogError("unknown family '" + family_in + "'\n" + catalog_listing());

    Params p;
    for (const auto& [k, v] : params_in) {
        std::string key;
        for (char ch : k) key += static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
        if (std::find(info->keys.begin(), info->keys.end(), key) == info->keys.end())
            throw DomainError(family + ": unknown parameter " + k);
        p[key] = v;
    }

    TailModel m;
    m.family = family;
    for (const auto& key : info->keys) m.params.emplace_back(key, need(p, family, key));

    auto& meta = m.meta;
    if (family == "pareto") {
        const double a = need_positive(p, family, "alpha"), t = need_positive(p, family, "theta");
        m.dist = std::make_shared<Pareto>(a, t);
        m.mda = MdaClass::Frechet;
        meta.alpha1 = a;
        meta.tau1 = -1.0;
        meta.A_tilde = [a, t](double x) { return a * t / x; };
    } else if (family == "frechet") {
        const double a = need_positive(p, family, "alpha");
        m.dist = std::make_shared<Frechet>(a);
        m.mda = MdaClass::Frechet;
        meta.alpha1 = a;
        meta.tau1 = -a;
        meta.A_tilde = [a](double x) { return 0.5 * a * std::pow(x, -a); };
    } else if (family == "burr") {
        const double a = need_positive(p, family, "a"), b = need_positive(p, family, "b");
        m.dist = std::make_shared<Burr>(a, b);
        m.mda = MdaClass::Frechet;
        meta.alpha1 = a * b;
        meta.tau1 = -b;
        meta.A_tilde = [a, b](double x) { return a * b * std::pow(x, -b); };
    } else if (family == "hallweiss") {
        const double a = need_positive(p, family, "alpha"), t = need(p, family, "tau");
        if (!(t < 0.0)) throw DomainError("hallweiss: parameter tau must be negative");
        m.dist = std::make_shared<HallWeiss>(a, t);
        m.mda = MdaClass::Frechet;
        meta.alpha1 = a;
        meta.tau1 = t;
        meta.A_tilde = [t](double x) { return t * std::pow(x, t); };
    } else if (family == "loggamma") {
        const double a = need_positive(p, family, "alpha"), b = need_positive(p, family, "beta");
        m.dist = std::make_shared<LogGamma>(a, b);
        m.mda = MdaClass::Frechet;
        meta.alpha1 = a;
        meta.tau1 = 0.0;
        meta.A_tilde = [b](double x) { return (b - 1.0) / std::log(x); };
    } else if (family == "invgamma") {
        const double a = need_positive(p, family, "alpha"), b = need_positive(p, family, "beta");
        m.dist = std::make_shared<InvGamma>(a, b);
        m.mda = MdaClass::Frechet;
        meta.alpha1 = a;
        meta.tau1 = -1.0;
        meta.A_tilde = [a, b](double x) { return a * b / ((a + 1.0) * x); };
    } else if (family == "abst") {
        const double v = need_positive(p, family, "v");
        m.dist = std::make_shared<AbsT>(v);
        m.mda = MdaClass::Frechet;
        meta.alpha1 = v;
        meta.tau1 = -2.0;
        meta.A_tilde = [v](double x) { return v * v * (v + 1.0) / ((v + 2.0) * x * x); };
    } else if (family == "fdist") {
        const double mm = need_positive(p, family, "m"), n = need_positive(p, family, "n");
        m.dist = std::make_shared<FDist>(mm, n);
        m.mda = MdaClass::Frechet;
        meta.alpha1 = 0.5 * n;
        meta.tau1 = -1.0;
        meta.A_tilde = [mm, n](double x) { return (mm + n) * n * n / (2.0 * mm * (n + 2.0) * x); };
    } else if (family == "beta2") {
        const double a = need_positive(p, family, "a"), b = need_positive(p, family, "b");
        m.dist = std::make_shared<Beta2>(a, b);
        m.mda = MdaClass::Frechet;
        meta.alpha1 = b;
        meta.tau1 = -1.0;
        meta.A_tilde = [a, b](double x) { return (a + b) * b / ((1.0 + b) * x); };
    } else if (family == "beta") {
        const double a = need_positive(p, family, "a"), b = need_positive(p, family, "b");
        m.dist = std::make_shared<Beta>(a, b);
        m.mda = MdaClass::Weibull;
        const double bB = b * sf::beta(a, b);
        meta.alpha1 = b;
        meta.tau1 = -1.0;
        meta.A_tilde = [a, b, bB](double t) {
            return -(a - 1.0) / (b * (b + 1.0)) * std::pow(t / bB, -1.0 / b);
        };
        meta.A_tilde_star = [a, b](double x) { return b * (a - 1.0) / ((b + 1.0) * x); };
        wire_deflator(m, b, -1.0, [a, b](double x) { return b * (a - 1.0) / ((b + 1.0) * x); });
    } else if (family == "reverseburr") {
        const double a = need_positive(p, family, "a"), b = need_positive(p, family, "b");
        m.dist = std::make_shared<ReverseBurr>(a, b);
        m.mda = MdaClass::Weibull;
        meta.alpha1 = a * b;
        meta.tau1 = -b;
        meta.A_tilde = [a, b](double t) { return -std::pow(t, -1.0 / a) / (a * b); };
        meta.A_tilde_star = [a, b](double x) { return a * b * std::pow(x, -b); };
        wire_deflator(m, a * b, -b, [a, b](double x) { return a * b * std::pow(x, -b); });
    } else if (family == "gamma") {
        const double a = need_positive(p, family, "alpha"), l = need_positive(p, family, "lambda");
        m.dist = std::make_shared<Gamma>(a, l);
        m.mda = MdaClass::GumbelWeibullTail;
        auto d = m.dist;
        meta.rho = 0.0;
        meta.a = [a, l](double t) { return (1.0 + (a - 1.0) / std::log(t)) / l; };
        meta.A_tilde = [a](double t) {
            const double lt = std::log(t);
            return (1.0 - a) / (lt * lt);
        };
        meta.w = [a, l, d](double x) { return l / (1.0 + (a - 1.0) / -d->log_survival(x)); };
        wire_weibull_tail(m, 1.0, -1.0, [a](double y) { return (1.0 - a) * std::log(y) / y; });
    } else if (family == "absnormal") {
        m.dist = std::make_shared<AbsNormal>();
        m.mda = MdaClass::GumbelWeibullTail;
        meta.rho = 0.0;
        meta.a = [](double t) {
            const double x = 2.0 * t, lx = std::log(x), s = std::sqrt(2.0 * lx);
            const double u1 = s - std::log(4.0 * M_PI * lx) / (2.0 * s);
            return u1 / (2.0 * lx);
        };
        meta.A_tilde = [](double t) { return -1.0 / (2.0 * std::log(t)); };
        wire_weibull_tail(m, 0.5, -1.0, [](double y) { return std::log(y) / (4.0 * y); });
    } else if (family == "weibull") {
        const double b = need_positive(p, family, "beta"), c = need_positive(p, family, "c");
        m.dist = std::make_shared<Weibull>(b, c);
        m.mda = MdaClass::GumbelWeibullTail;
        meta.rho = 0.0;
        meta.a = [b, c](double t) { return std::pow(std::log(t), 1.0 / b - 1.0) / (b * std::pow(c, 1.0 / b)); };
        meta.A_tilde = [b](double t) { return (1.0 / b - 1.0) / std::log(t); };
        meta.w = [b, c](double x) { return c * b * std::pow(x, b - 1.0); };
        wire_weibull_tail(m, 1.0 / b, -kInf, [](double) { return 0.0; });
    } else if (family == "perturbedweibull") {
        const double b = need_positive(p, family, "beta"), a = need_positive(p, family, "alpha");
        const double C = need_positive(p, family, "c"), D = need(p, family, "d");
        if (!(a < b)) throw DomainError("perturbedweibull: requires alpha < beta");
        if (D < 0.0) throw DomainError("perturbedweibull: requires d >= 0");
        m.dist = std::make_shared<PerturbedWeibull>(b, a, C, D);
        m.mda = MdaClass::GumbelWeibullTail;
        wire_weibull_tail(m, 1.0 / b, -a / b, [a, b, C, D](double y) {
            return a * D / (b * b) * std::pow(C, a / b - 1.0) * std::pow(y, -a / b);
        });
    } else if (family == "benktander2") {
        const double b = need(p, family, "beta"), l = need_positive(p, family, "lambda");
        if (!(b > 0.0 && b < 1.0)) throw DomainError("benktander2: parameter beta must lie in (0,1)");
        m.dist = std::make_shared<BenktanderII>(b, l);
        m.mda = MdaClass::GumbelWeibullTail;
        auto d = m.dist;
        meta.rho = 0.0;
        meta.A_tilde = [b](double t) { return (1.0 / b - 1.0) / std::log(t); };
        meta.w = [b, l, d](double x) {
            const double mm = l / b - d->log_survival(x);
            const double q = (1.0 - b) / (b * mm);
            return b * mm / ((1.0 - q) * x);
        };
        wire_weibull_tail(m, 1.0 / b, -1.0, [b](double y) { return (1.0 - b) * std::log(y) / (b * b * y); });
    } else if (family == "logistic") {
        m.dist = std::make_shared<Logistic>();
        m.mda = MdaClass::GumbelWeibullTail;
        meta.rho = -1.0;
        meta.a = [](double) { return 1.0; };
        meta.A_tilde = [](double t) { return 1.0 / (2.0 * t); };
        meta.w = [](double) { return 1.0; };
        wire_weibull_tail(m, 1.0, -1.0, [](double y) { return -std::log(2.0) / y; });
    } else if (family == "truncatedgumbel" || family == "truncgumbelunit") {
        m.dist = std::make_shared<TruncatedGumbel>();
        m.mda = MdaClass::Gumbel;
        const double pp = -std::expm1(-1.0);
        meta.rho = -1.0;
        meta.a = [](double) { return 1.0; };
        meta.A_tilde = [pp](double t) { return pp / (2.0 * t); };
        meta.w = [](double) { return 1.0; };
    } else if (family == "e1c") {
        const double c = need_positive(p, family, "c");
        m.dist = std::make_shared<E1c>(c);
        m.mda = MdaClass::Gumbel;
        meta.rho = 0.0;
        meta.a = [c](double t) {
            const double s = c + std::log(t);
            return c / (s * s);
        };
        meta.A_tilde = [c](double t) { return -2.0 / (c + std::log(t)); };
        meta.w = [c](double x) { return c / ((1.0 - x) * (1.0 - x)); };
    }
    m.x_low = m.dist->x_low;
    m.x_high = m.dist->x_high;
    return m;
}

TailModel parse_model(const std::string& spec)
{
    std::string text;
    for (char ch : spec)
        if (!std::isspace(static_cast<unsigned char>(ch))) text += ch;
    if (text.empty()) throw ParseError("empty model specification", 0);
    const auto colon = text.find(':');
    const std::string family = text.substr(0, colon);
    std::map<std::string, double> params;
    if (colon != std::string::npos) {
        std::stringstream ss(text.substr(colon + 1));
        std::string item;
        while (std::getline(ss, item, ',')) {
            if (item.empty()) continue;
            const auto eq = item.find('=');
            if (eq == std::string::npos || eq == 0 || eq + 1 == item.size())
                throw ParseError("expected key=value in model specification '" + spec + "'", 0);
            std::string key;
            for (char ch : item.substr(0, eq)) key += static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
            const std::string val = item.substr(eq + 1);
            double v = 0.0;
            auto res = std::from_chars(val.data(), val.data() + val.size(), v);
            if (res.ec != std::errc() || res.ptr != val.data() + val.size())
                throw ParseError("bad number '" + val + "' in model specification '" + spec + "'", 0);
            if (params.count(key)) throw ParseError("duplicate key '" + key + "' in '" + spec + "'", 0);
            params[key] = v;
        }
    }
    return make_model(family, params);
}

std::string normalize_spec(const std::string& spec) { return parse_model(spec).spec(); }

double deflator_expectation(const TailModel& S, double s_lo, const DeflatorIntegrand& h, double rel_tol)
{
    const double top = S.x_high, bottom = S.x_low;
    if (!std::isfinite(top) || bottom < 0.0) throw DomainError("deflator must be supported on a bounded subset of [0,inf)");
    const double lo = std::max(s_lo, bottom);
    if (lo >= top) return 0.0;
    const double width = top - lo;
    const double mid_gap = 0.5 * width; // distance from either end to the split point
    if (S.has_density()) {
        auto lower = [&](double e) {
            const double s = lo + e;
            const double v = h(s, width - e, e);
            return v == 0.0 ? 0.0 : v * std::exp(S.log_density(s));
        };
        auto upper = [&](double t) {
            const double v = h(top - t, t, width - t);
            return v == 0.0 ? 0.0 : v * std::exp(S.log_density_below_top(t));
        };
        return quad::integrate_near_zero(lower, mid_gap, rel_tol).value
               + quad::integrate_near_zero(upper, mid_gap, rel_tol).value;
    }
    // Quantile substitution s = G^{-1}(u).
    const double u_lo = S.cdf(lo);
    const double mass = 1.0 - u_lo;
    auto lower = [&](double e) {
        const double s = S.quantile(u_lo + e);
        return h(s, top - s, s - lo);
    };
    auto upper = [&](double v) {
        const double s = S.upper_quantile(v);
        return h(s, top - s, s - lo);
    };
    return quad::integrate_near_zero(lower, 0.5 * mass, rel_tol).value
           + quad::integrate_near_zero(upper, 0.5 * mass, rel_tol).value;
}

double mellin_moment(const TailModel& S, double kappa)
{
    if (!S.on_unit_interval()) throw DomainError("mellin_moment: deflator must be supported on (0,1)");
    if (!(kappa > 0.0)) throw DomainError("mellin_moment: kappa must be positive");
    if (S.family == "beta") {
        const double a = S.param("a"), b = S.param("b");
        return std::exp(sf::log_beta(a + kappa, b) - sf::log_beta(a, b));
    }
    return deflator_expectation(S, 0.0, [kappa](double s, double, double) { return std::pow(s, kappa); });
}

double log_moment(const TailModel& S, double alpha)
{
    if (!S.on_unit_interval()) throw DomainError("log_moment: deflator must be supported on (0,1)");
    if (!(alpha > 0.0)) throw DomainError("log_moment: alpha must be positive");
    return deflator_expectation(S, 0.0, [alpha](double s, double sc, double) {
        if (s <= 0.0) return 0.0;
        const double l = sc < 0.5 ? -std::log1p(-sc) : -std::log(s);
        return std::pow(s, alpha) * l;
    });
}

double rv2_limit(double alpha, double rho, double x)
{
    const double base = std::pow(x, alpha);
    return rho == 0.0 ? base * std::log(x) : base * std::expm1(rho * std::log(x)) / rho;
}

std::vector<double> rv2_convergence_check(const RealMap& f, double alpha, double rho, const RealMap& A, double x,
                                          const std::vector<double>& t_grid)
{
    if (rho > 0.0) throw DomainError("rv2_convergence_check: rho must be nonpositive");
    if (!(x > 0.0)) throw DomainError("rv2_convergence_check: x must be positive");
    std::vector<double> out;
    out.reserve(t_grid.size());
    const double H = rv2_limit(alpha, rho, x);
    for (double t : t_grid) {
        const double at = A(t);
        if (at == 0.0 || !std::isfinite(at)) throw DomainError("rv2_convergence_check: degenerate auxiliary function at t=" + format_real(t));
        const double ft = f(t), ftx = f(t * x);
        if (!(ft > 0.0)) throw DomainError("rv2_convergence_check: f must be positive on the grid");
        out.push_back((ftx / ft - std::pow(x, alpha)) / at - H);
    }
    return out;
}

} // namespace drisk
