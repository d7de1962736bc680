#include "drisk/estimators.hpp"

#include "drisk/errors.hpp"
#include "drisk/expansions.hpp"
#include "drisk/parallel.hpp"
#include "drisk/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace drisk {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void check_k(const std::vector<double>& v, std::size_t k)
{
    if (k < 1 || k + 1 > v.size()) throw DomainError("k must satisfy 1 <= k <= n-1");
}

bool finite_positive(double v) { return std::isfinite(v) && v > 0.0; }

} // namespace

double hill(const std::vector<double>& v, std::size_t k)
{
    check_k(v, k);
    const std::size_t n = v.size();
    const double base = v[n - k - 1];
    if (!(base > 0.0)) throw DomainError("hill: top k+1 values must be positive");
    double sum = 0.0;
    for (std::size_t i = 1; i <= k; ++i) sum += std::log(v[n - i] / base);
    return sum / static_cast<double>(k);
}

double hill_power_mean(const std::vector<double>& v, std::size_t k, double s)
{
    check_k(v, k);
    const std::size_t n = v.size();
    const double base = v[n - k - 1];
    double sum = 0.0;
    for (std::size_t i = 1; i <= k; ++i) sum += std::pow(v[n - i] / base, s);
    return sum / static_cast<double>(k);
}

HeavyTailEstimates heavy_fit(const std::vector<double>& v, std::size_t k, double x, const RhoRule& rule)
{
    check_k(v, k);
    const std::size_t n = v.size();
    HeavyTailEstimates e;
    e.k = k;
    e.H_kn = hill(v, k);
    const double H = e.H_kn;
    const double rho = rule.fixed ? *rule.fixed : -H;
    e.rho_hat = rho;
    e.tau_hat = rho / H;
    const double Ek = hill_power_mean(v, k, rho / H);
    e.delta_hat = H * (1.0 - 2.0 * rho) * std::pow(1.0 - rho, 3) / std::pow(rho, 4) * (Ek - 1.0 / (1.0 - rho));
    const double inv_alpha = H - e.delta_hat * rho / (1.0 - rho);
    e.alpha_hat = 1.0 / inv_alpha;
    e.y = x / v[n - k - 1];
    const double inner = e.y * (1.0 + e.delta_hat * (1.0 - std::pow(e.y, e.tau_hat)));
    e.fbar_hat = static_cast<double>(k) / static_cast<double>(n) * std::pow(inner, -e.alpha_hat);
    e.p_hat = e.fbar_hat;
    e.valid = H > 0.0 && inv_alpha > 0.0 && inner > 0.0 && finite_positive(e.fbar_hat);
    return e;
}

HeavyTailEstimates heavy_pipeline(const SampleSet& samples, std::size_t k, double x_n, SampleUse use, const RhoRule& rule)
{
    if (use == SampleUse::X) return heavy_fit(samples.x_sorted, k, x_n, rule);
    HeavyTailEstimates e = heavy_fit(samples.r_sorted, k, x_n, rule);
    double m1 = 0.0, m2 = 0.0;
    for (double s : samples.s) {
        m1 += std::pow(s, e.alpha_hat);
        m2 += std::pow(s, e.alpha_hat - e.tau_hat);
    }
    const double n = static_cast<double>(samples.n());
    e.m_alpha_hat = m1 / n;
    e.m_alpha_tau_hat = m2 / n;
    e.p_hat = e.fbar_hat * (e.m_alpha_hat + (e.m_alpha_tau_hat - e.m_alpha_hat) * e.delta_hat / e.H_kn);
    e.valid = e.valid && finite_positive(e.p_hat);
    return e;
}

ThetaEstimate weibull_theta(const std::vector<double>& v, std::size_t k)
{
    check_k(v, k);
    if (k < 3) throw DomainError("weibull_theta: needs k >= 3");
    const std::size_t n = v.size();
    const double nd = static_cast<double>(n);
    const double lnk = std::log(nd / static_cast<double>(k));
    std::vector<double> xs(k), zs(k);
    double xbar = 0.0, zbar = 0.0;
    for (std::size_t j = 1; j <= k; ++j) {
        const double lnj = std::log(nd / static_cast<double>(j));
        const double hi = v[n - j], lo = v[n - j - 1];
        if (!(lo > 0.0)) throw DomainError("weibull_theta: top order statistics must be positive");
        xs[j - 1] = lnk / lnj;
        zs[j - 1] = static_cast<double>(j) * lnj * std::log(hi / lo);
        xbar += xs[j - 1];
        zbar += zs[j - 1];
    }
    xbar /= static_cast<double>(k);
    zbar /= static_cast<double>(k);
    double sxz = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
        sxz += (xs[i] - xbar) * zs[i];
        sxx += (xs[i] - xbar) * (xs[i] - xbar);
    }
    if (!(sxx > 0.0)) throw NumericError("weibull_theta: the regressors x_j have no spread", sxx);
    ThetaEstimate t;
    t.b_hat = sxz / sxx;
    t.theta_hat = zbar - t.b_hat * xbar;
    return t;
}

namespace {

// Inverse of the bias-reduced quantile estimator at x, returned as V = -log Fbar.
double weibull_V_hat(double x, double base, double lnk, const ThetaEstimate& t, double rho_prime)
{
    const double r = x / base;
    const double bias = rho_prime == 0.0 ? t.b_hat * std::log(r) / (t.theta_hat * t.theta_hat)
                                          : t.b_hat * std::expm1(rho_prime / t.theta_hat * std::log(r)) / (t.theta_hat * rho_prime);
    return lnk * std::pow(r, 1.0 / t.theta_hat) * std::exp(-bias);
}

} // namespace

WeibullTailEstimates weibull_pipeline(const SampleSet& samples, std::size_t k, double x, SampleUse use,
                                      double rho_prime_hat, double tau2_hat)
{
    WeibullTailEstimates e;
    e.k = k;
    e.rho_prime_hat = rho_prime_hat;
    const auto& v = use == SampleUse::RS ? samples.r_sorted : samples.x_sorted;
    check_k(v, k);
    const std::size_t n = v.size();
    const double lnk = std::log(static_cast<double>(n) / static_cast<double>(k));
    ThetaEstimate t;
    try {
        t = weibull_theta(v, k);
    } catch (const NumericError&) {
        e.valid = false;
        e.p_hat = kNaN;
        return e;
    }
    e.theta_hat = t.theta_hat;
    e.b_hat = t.b_hat;
    e.V_hat = weibull_V_hat(x, v[n - k - 1], lnk, t, rho_prime_hat);
    e.fbar_hat = std::exp(-e.V_hat);
    if (use == SampleUse::X) {
        e.p_hat = e.fbar_hat;
        e.valid = t.theta_hat > 0.0 && e.V_hat > 0.0 && e.fbar_hat < 1.0 && finite_positive(e.p_hat);
        return e;
    }
    e.bV_hat = t.b_hat * std::pow(e.V_hat / lnk, rho_prime_hat);

    // Deflator side: S* = 1/(1-S) is regularly varying with index alpha2.
    std::vector<double> s_star(samples.s_sorted.size());
    std::transform(samples.s_sorted.begin(), samples.s_sorted.end(), s_star.begin(),
                   [](double s) { return 1.0 / (1.0 - s); });
    // Hill-based fit with tau2 fixed, i.e. rho = tau2 * H.
    const double H2 = hill(s_star, k);
    const auto g = heavy_fit(s_star, k, e.V_hat, RhoRule{tau2_hat * H2});
    e.alpha2_hat = g.alpha_hat;
    e.tau2_hat = g.tau_hat;
    e.delta2_hat = g.delta_hat;
    e.gbar_hat = g.fbar_hat;
    e.A_hat = g.alpha_hat * g.tau_hat * g.delta_hat * std::pow(g.y, g.tau_hat);

    const double a2 = e.alpha2_hat, th = e.theta_hat;
    const auto c = weibull_tail_coefficients(a2, e.tau2_hat, th);
    const double bracket = 1.0 + c.c_b * e.bV_hat + c.c_A * e.A_hat + c.c_V / e.V_hat;
    e.p_hat = e.fbar_hat * e.gbar_hat * specfun::gamma(a2 + 1.0) * std::pow(th, a2) * bracket;
    e.valid = g.valid && th > 0.0 && e.V_hat > 0.0 && e.fbar_hat < 1.0 && finite_positive(e.p_hat);
    return e;
}

std::string to_string(Method m)
{
    switch (m) {
    case Method::HeavyRS: return "heavy_RS";
    case Method::HeavyX: return "heavy_X";
    case Method::WeibullRS: return "weibull_RS";
    case Method::WeibullX: return "weibull_X";
    }
    return "?";
}

Method parse_method(const std::string& name)
{
    std::string s;
    for (char ch : name) s += static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
    if (s == "heavy_rs") return Method::HeavyRS;
    if (s == "heavy_x") return Method::HeavyX;
    if (s == "weibull_rs") return Method::WeibullRS;
    if (s == "weibull_x") return Method::WeibullX;
    throw DomainError("unknown method '" + name + "' (expected heavy_RS, heavy_X, weibull_RS or weibull_X)");
}

EstimatorPath estimator_path(const SampleSet& samples, Method method, const std::vector<std::size_t>& k_grid, double x,
                             std::optional<double> true_p)
{
    for (std::size_t i = 1; i < k_grid.size(); ++i)
        if (k_grid[i] <= k_grid[i - 1]) throw DomainError("k grid must be strictly increasing");
    if (!k_grid.empty() && k_grid.back() + 1 > samples.n()) throw DomainError("k grid exceeds n-1");
    EstimatorPath path;
    path.method = method;
    path.x = x;
    path.k_grid = k_grid;
    path.true_p = true_p;
    path.points.resize(k_grid.size());
    parallel_for(k_grid.size(), [&](std::size_t i) {
        const std::size_t k = k_grid[i];
        PathPoint pt;
        pt.k = k;
        switch (method) {
        case Method::HeavyRS:
        case Method::HeavyX: {
            const auto e = heavy_pipeline(samples, k, x, method == Method::HeavyRS ? SampleUse::RS : SampleUse::X);
            pt.estimate_index = e.alpha_hat;
            pt.p_hat = e.p_hat;
            pt.valid = e.valid;
            break;
        }
        case Method::WeibullRS:
        case Method::WeibullX: {
            if (k < 3) {
                pt.p_hat = kNaN;
                pt.estimate_index = kNaN;
                path.points[i] = pt;
                return;
            }
            const auto e = weibull_pipeline(samples, k, x, method == Method::WeibullRS ? SampleUse::RS : SampleUse::X);
            pt.estimate_index = e.theta_hat;
            pt.p_hat = e.p_hat;
            pt.valid = e.valid;
            break;
        }
        }
        path.points[i] = pt;
    });
    return path;
}

std::pair<std::size_t, std::size_t> stable_k_region(std::size_t n)
{
    const auto lo = static_cast<std::size_t>(std::ceil(0.04 * static_cast<double>(n)));
    const auto hi = static_cast<std::size_t>(std::floor(0.3 * static_cast<double>(n)));
    return {lo, hi};
}

double quantile_of(std::vector<double> v, double q)
{
    if (v.empty()) return kNaN;
    std::sort(v.begin(), v.end());
    const double pos = q * static_cast<double>(v.size() - 1);
    const auto i = static_cast<std::size_t>(std::floor(pos));
    if (i + 1 >= v.size()) return v.back();
    const double f = pos - static_cast<double>(i);
    return v[i] + f * (v[i + 1] - v[i]);
}

double median(std::vector<double> v) { return quantile_of(std::move(v), 0.5); }

namespace {

std::vector<double> stable_values(const EstimatorPath& path, std::size_t lo, std::size_t hi, bool take_log)
{
    std::vector<double> out;
    for (const auto& pt : path.points)
        if (pt.valid && pt.k >= lo && pt.k <= hi) out.push_back(take_log ? std::log(pt.p_hat) : pt.p_hat);
    return out;
}

} // namespace

double median_p_hat(const EstimatorPath& path, std::size_t k_lo, std::size_t k_hi)
{
    return median(stable_values(path, k_lo, k_hi, false));
}

double iqr_log_p_hat(const EstimatorPath& path, std::size_t k_lo, std::size_t k_hi)
{
    const auto v = stable_values(path, k_lo, k_hi, true);
    return quantile_of(v, 0.75) - quantile_of(v, 0.25);
}

} // namespace drisk
