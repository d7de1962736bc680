#pragma once

#include <functional>

namespace drisk::quad {

struct Result {
    double value = 0.0;
    double error = 0.0; // absolute error estimate
};

using Integrand = std::function<double(double)>;

// Adaptive Gauss-Kronrod on a finite interval. Throws NumericError when the
// error estimate stays above rel_tol times the L1 norm of f.
Result integrate(const Integrand& f, double a, double b, double rel_tol = 1e-12);

// Integral of f(d) over d in (0, span] for integrands that are singular at
// d = 0 or concentrated in a thin layer next to it. Integrates in y = log d on
// unit-length pieces walking towards d = 0 until the pieces stop contributing.
Result integrate_near_zero(const Integrand& f, double span, double rel_tol = 1e-12);

} // namespace drisk::quad
