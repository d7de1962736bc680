#pragma once

#include "drisk/distributions.hpp"

#include <optional>

namespace drisk {

struct VarReport {
    double p = 0.0;
    double var_R = 0.0;
    double var_X_first = 0.0;
    double var_X_second = 0.0; // second-order (Frechet) or Weibull-tail value
    std::optional<double> var_X_exact;
    MdaClass regime = MdaClass::Frechet;
};

// VaR_p(R) = U(1/(1-p)) from the exact quantile of R.
double var_risk(const TailModel& R, double p);

// (E{S^alpha})^{1/alpha} VaR_p(R).
double var_first_order(const TailModel& R, const TailModel& S, double p);
// First-order value times 1 + E(p); needs tau < 0.
double var_second_order(const TailModel& R, const TailModel& S, double p);
// VaR_p(R)(1 - theta alpha2 loglog(1/(1-p))/log(1/(1-p))); needs p > 1 - 1/e.
double var_weibull_tail(const TailModel& R, const TailModel& S, double p);

VarReport var_report(const TailModel& R, const TailModel& S, double p, bool with_exact);

} // namespace drisk
