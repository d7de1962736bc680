#pragma once

#include "drisk/distributions.hpp"
#include "drisk/expansions.hpp"

#include <cstdint>
#include <optional>

namespace drisk {

// Joint law of the signs (I1, I2); p_ab = P(I1 = a, I2 = b).
struct SignLaw {
    double p_pp = 0.25, p_pm = 0.25, p_mp = 0.25, p_mm = 0.25;
    static SignLaw independent(double p1, double p2);
    void validate() const;
};

double q_lambda(const SignLaw& law, double lambda);

// P(|S - lambda| <= x) = c x^alpha (1 + L(x) x^tau) for small x.
struct LocalCoeffs {
    double c = 0.0, alpha = 0.0, tau = 0.0;
    double L_const = 0.0;
    RealMap L; // optional; L_const is used when empty
    double L_at(double x) const { return L ? L(x) : L_const; }
};

LocalCoeffs beta_local_coeffs(double a, double b, double lambda);
// Smooth density at an interior lambda: c = 2g, alpha = 1, tau = 2 and
// L = g''(lambda)/(6 g(lambda)). g'' is taken from `g2` when given, else by
// central differences.
LocalCoeffs smooth_local_coeffs(const RealMap& g, double lambda, std::optional<double> g2 = std::nullopt);

struct AggregationModel {
    double lambda = 1.0;
    double q = 1.0;
    LocalCoeffs coeffs;
    std::optional<TailModel> deflator;
    std::optional<TailModel> risk;
    double x_cut = 0.05;
};

// Derives q and the local coefficients from a deflator law.
AggregationModel make_aggregation_model(const TailModel& S, const SignLaw& law, double lambda);
AggregationModel make_aggregation_model(const TailModel& R, const TailModel& S, const SignLaw& law, double lambda);

struct SLambdaTail {
    double leading = 0.0;    // q c (...)^{alpha/2} or q c x^alpha
    double correction = 0.0; // the term A_lambda(x)
    double value = 0.0;      // leading (1 + correction)
};
// P(S(lambda) > 1 - x) for 0 < x < x_cut.
SLambdaTail s_lambda_tail(const AggregationModel& model, double x);

struct AggregatedParams {
    double alpha = 0.0, tau = 0.0;
    RealMap A;
};
AggregatedParams aggregated_params(const AggregationModel& model);

// Case a (Gumbel risk): P(V(lambda) > x). Case b (x_F = 1): P(V(lambda) > 1 - x),
// taking the threshold point x in (0,1) and working with d = 1 - x.
Expansion aggregate_expand(const AggregationModel& model, double x);

// P(V(lambda) > x) by quadrature over S, summing over the sign events.
double aggregate_exact_tail(const TailModel& R, const TailModel& S, const SignLaw& law, double lambda, double x);

struct McResult {
    double estimate = 0.0;
    double std_error = 0.0;
    double window_mass = 0.0;
    std::uint64_t draws = 0;
    std::uint64_t hits = 0;
};
// Stratified Monte Carlo estimate of P(S(lambda) > 1 - x): conditions on the
// sign event that can reach the tail and on a window of S containing the
// event, then samples S from G restricted to the window.
McResult mc_s_lambda_tail(const TailModel& S, const SignLaw& law, double lambda, double x, std::uint64_t draws,
                          std::uint64_t seed);

} // namespace drisk
