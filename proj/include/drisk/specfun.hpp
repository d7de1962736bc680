#pragma once

// Gamma-family special functions. Relative accuracy is at least 1e-12 on the
// documented argument ranges (digamma: 1e-10). All functions are reentrant.

namespace drisk::specfun {

double log_gamma(double x);
double gamma(double x);
double log_beta(double a, double b);
double beta(double a, double b);
double digamma(double x);

// Q(a,x) = Gamma(a,x)/Gamma(a) and P(a,x) = 1 - Q(a,x).
double reg_inc_gamma_upper(double a, double x);
double reg_inc_gamma_lower(double a, double x);
// x with Q(a,x) = q (resp. P(a,x) = p).
double inv_reg_inc_gamma_upper(double a, double q);
double inv_reg_inc_gamma_lower(double a, double p);

// I_x(a,b) and its complement 1 - I_x(a,b), each computed without cancellation.
double reg_inc_beta(double a, double b, double x);
double reg_inc_beta_complement(double a, double b, double x);
double inv_reg_inc_beta(double a, double b, double p);
double inv_reg_inc_beta_complement(double a, double b, double q);

double erfc(double x);
double erfc_inv(double q);

// (Gamma(a - t)/Gamma(a) - 1)/t, equal to -psi(a) at t = 0.
double gamma_ratio_quotient(double a, double t);
// (B(p, q - t) - B(p, q))/t, equal to -B(p,q)(psi(q) - psi(p+q)) at t = 0.
double beta_difference_quotient(double p, double q, double t);

} // namespace drisk::specfun
