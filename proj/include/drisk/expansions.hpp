#pragma once

#include "drisk/distributions.hpp"

#include <map>
#include <string>

namespace drisk {

// Tail approximation of X = R*S at one point. `correction` is relative to
// `leading`, so second_order = leading*(1 + correction), and the entries of
// `terms` add up to `correction`. `info` carries the raw auxiliary values
// (for Gumbel pairs also the additive form used in the literature, "E").
struct Expansion {
    double x = 0.0;
    double leading = 0.0;
    double correction = 0.0;
    double second_order = 0.0;
    MdaClass regime = MdaClass::Frechet;
    std::map<std::string, double> terms;
    std::map<std::string, double> info;
};

// K(alpha2, rho). The rho = 0 value follows the psi(x) = log^2(x)/2 convention
// of second-order Pi-variation and is not the rho -> 0 limit unless alpha2 = 1.
double K_coefficient(double alpha2, double rho);

// eta(x) = x w(x) with w the reciprocal mean excess.
double eta(const TailModel& R, double x);

// Multipliers of A(eta), 1/eta and Atilde(1/Fbar) in the Gumbel correction.
struct GumbelCoefficients {
    double c_A, c_eta, c_K;
};
GumbelCoefficients gumbel_coefficients(double alpha2, double tau2, double rho);

// Multipliers of b(V), A(V) and 1/V in the Weibull-tail correction.
struct WeibullTailCoefficients {
    double c_b, c_A, c_V;
};
WeibullTailCoefficients weibull_tail_coefficients(double alpha2, double tau2, double theta);

Expansion frechet_expand(const TailModel& R, const TailModel& S, double x);
Expansion gumbel_expand(const TailModel& R, const TailModel& S, double x);

// H(x + z/w(x))/(e^{-z} H(x)) and the auxiliaries of U_X at the level t with
// U_X(t) = x.
struct ShiftRatio {
    Expansion expansion; // leading = 1, second_order = approximated ratio
    double a_breve = 0.0;
    double A_breve = 0.0;
};
ShiftRatio gumbel_shift_ratio(const TailModel& R, const TailModel& S, double x, double z);

struct WeibullTailExpansion {
    Expansion expansion;
    double theta_star = 0.0;
    double rho_prime_star = 0.0;
    RealMap b_star;
};
WeibullTailExpansion weibull_tail_expand(const TailModel& R, const TailModel& S, double x);

enum class WeibullMdaVariant { QuantileAux, SurvivalAux };
Expansion weibull_mda_expand(const TailModel& R, const TailModel& S, double x,
                             WeibullMdaVariant variant = WeibullMdaVariant::QuantileAux);

// Deflator side of the Gumbel and x_F = 1 expansions: P(S > 1 - d) as a
// function of d together with its 2RV index, second-order index and
// auxiliary function (of x, for the tail at 1 - 1/x).
struct DeflatorTail {
    double alpha2 = 0.0, tau2 = 0.0;
    RealMap A;
    RealMap tail;
};
DeflatorTail deflator_tail(const TailModel& S, bool strict_tau);

namespace detail {
Expansion gumbel_kernel(const TailModel& R, const DeflatorTail& D, double x);
Expansion weibull_mda_kernel(const TailModel& R, const DeflatorTail& D, double x, WeibullMdaVariant variant);
} // namespace detail

// Picks the expansion matching the regime of R.
Expansion expand(const TailModel& R, const TailModel& S, double x);

} // namespace drisk
