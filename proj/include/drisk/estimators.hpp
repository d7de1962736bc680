#pragma once

#include "drisk/oracle.hpp"

#include <optional>
#include <string>
#include <vector>

namespace drisk {

// All order-statistic routines take ascending data; R_{n-k,n} is v[n-k-1].

double hill(const std::vector<double>& ascending, std::size_t k);
// E_{k,n}(s) = (1/k) sum (R_{n-i+1,n}/R_{n-k,n})^s.
double hill_power_mean(const std::vector<double>& ascending, std::size_t k, double s);

enum class SampleUse { RS, X };

// rho_hat unset selects rho = -H_{k,n}, i.e. tau = -1.
struct RhoRule {
    std::optional<double> fixed;
};

struct HeavyTailEstimates {
    std::size_t k = 0;
    double H_kn = 0.0;
    double rho_hat = 0.0, tau_hat = 0.0, delta_hat = 0.0, alpha_hat = 0.0;
    double y = 0.0;
    double fbar_hat = 0.0;
    double m_alpha_hat = 0.0, m_alpha_tau_hat = 0.0; // deflator moments (RS only)
    double p_hat = 0.0;
    bool valid = false;
};

// Second-order tail fit on the top k of `ascending` evaluated at x.
HeavyTailEstimates heavy_fit(const std::vector<double>& ascending, std::size_t k, double x, const RhoRule& rule = {});
HeavyTailEstimates heavy_pipeline(const SampleSet& samples, std::size_t k, double x_n, SampleUse use,
                                  const RhoRule& rule = {});

struct ThetaEstimate {
    double theta_hat = 0.0;
    double b_hat = 0.0;
};
ThetaEstimate weibull_theta(const std::vector<double>& ascending, std::size_t k);

struct WeibullTailEstimates {
    std::size_t k = 0;
    double theta_hat = 0.0, b_hat = 0.0, rho_prime_hat = -1.0;
    double fbar_hat = 0.0, V_hat = 0.0, bV_hat = 0.0;
    double gbar_hat = 0.0, A_hat = 0.0;
    double alpha2_hat = 0.0, tau2_hat = 0.0, delta2_hat = 0.0;
    double p_hat = 0.0;
    bool valid = false;
};

WeibullTailEstimates weibull_pipeline(const SampleSet& samples, std::size_t k, double x, SampleUse use,
                                      double rho_prime_hat = -1.0, double tau2_hat = -1.0);

enum class Method { HeavyRS, HeavyX, WeibullRS, WeibullX };
std::string to_string(Method m);
Method parse_method(const std::string& name);

struct PathPoint {
    std::size_t k = 0;
    double estimate_index = 0.0; // alpha_hat (heavy) or theta_hat (Weibull)
    double p_hat = 0.0;
    bool valid = false;
};

struct EstimatorPath {
    Method method = Method::HeavyRS;
    double x = 0.0;
    std::vector<std::size_t> k_grid;
    std::vector<PathPoint> points;
    std::optional<double> true_p;
};

EstimatorPath estimator_path(const SampleSet& samples, Method method, const std::vector<std::size_t>& k_grid,
                             double x, std::optional<double> true_p = std::nullopt);

// Stable region used for summaries: k in [0.04n, 0.3n].
std::pair<std::size_t, std::size_t> stable_k_region(std::size_t n);

// Median of p_hat over valid points with k in [k_lo, k_hi]; NaN when none.
double median_p_hat(const EstimatorPath& path, std::size_t k_lo, std::size_t k_hi);
// Interquartile range of log p_hat over the same points.
double iqr_log_p_hat(const EstimatorPath& path, std::size_t k_lo, std::size_t k_hi);

double median(std::vector<double> v);
double quantile_of(std::vector<double> v, double q);

} // namespace drisk
