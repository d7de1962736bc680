#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace drisk {

enum class MdaClass { Frechet, Gumbel, GumbelWeibullTail, Weibull };

std::string to_string(MdaClass m);

using RealMap = std::function<double(double)>;

// Second-order tail metadata. Which fields are present depends on the family:
//   Frechet risk:  alpha1, tau1, A_tilde (auxiliary of the survival function)
//   Gumbel risk:   rho, a, A_tilde (auxiliaries of U at scale t = 1/Fbar), w when known
//   Weibull tail:  theta, rho_prime, b, V, ell
//   Weibull MDA:   alpha1, tau1, A_tilde (auxiliary of 1 - U), A_tilde_star (of Fbar(1 - 1/x))
//   deflator:      alpha2, tau2, A, L with L(x) = x^alpha2 Gbar(1 - 1/x)
struct SecondOrderMeta {
    std::optional<double> alpha1, tau1, rho, alpha2, tau2, theta, rho_prime;
    RealMap A_tilde, A_tilde_star, A, a, b, L, V, ell, w;
};

// Closed-form evaluators of one parametric law.
class Distribution {
public:
    Distribution(double lo, double hi) : x_low(lo), x_high(hi) {}
    virtual ~Distribution() = default;

    virtual double survival(double x) const = 0;
    virtual double cdf(double x) const { return 1.0 - survival(x); }
    virtual double log_survival(double x) const;
    // x with Fbar(x) = u; accurate for tiny u.
    virtual double upper_quantile(double u) const;
    virtual double quantile(double p) const;
    virtual bool has_density() const { return true; }
    virtual double log_density(double x) const = 0;
    // Fbar(x_F - d) and log f(x_F - d) for a finite upper endpoint, computed
    // without forming x_F - d.
    virtual double survival_below_top(double d) const { return survival(x_high - d); }
    virtual double log_density_below_top(double d) const { return log_density(x_high - d); }
    virtual double atom_at_low() const { return 0.0; }

    const double x_low;
    const double x_high;

protected:
    // Bracketing plus safeguarded Newton on log Fbar.
    double solve_upper_quantile(double u) const;
};

struct TailModel {
    std::string family;
    std::vector<std::pair<std::string, double>> params; // canonical order
    double x_low = 0.0;
    double x_high = 0.0;
    MdaClass mda = MdaClass::Frechet;
    SecondOrderMeta meta;
    std::shared_ptr<const Distribution> dist;

    double survival(double x) const { return dist->survival(x); }
    double cdf(double x) const { return dist->cdf(x); }
    double log_survival(double x) const { return dist->log_survival(x); }
    double quantile(double p) const;
    double upper_quantile(double u) const;
    bool has_density() const { return dist->has_density(); }
    double density(double x) const;
    double log_density(double x) const { return dist->log_density(x); }
    double survival_below_top(double d) const { return dist->survival_below_top(d); }
    double log_density_below_top(double d) const { return dist->log_density_below_top(d); }
    double atom_at_low() const { return dist->atom_at_low(); }

    double param(const std::string& key) const;
    bool on_unit_interval() const { return x_low >= 0.0 && x_high <= 1.0; }
    bool is_gumbel() const { return mda == MdaClass::Gumbel || mda == MdaClass::GumbelWeibullTail; }
    std::string spec() const;
};

struct FamilyInfo {
    std::string name;
    std::vector<std::string> keys;
    std::string description;
};

const std::vector<FamilyInfo>& catalog();
std::string catalog_listing();

TailModel make_model(const std::string& family, const std::map<std::string, double>& params);
// Parses `family:key=value,...` case-insensitively.
TailModel parse_model(const std::string& spec);
std::string normalize_spec(const std::string& spec);
// Shortest decimal text that reads back to the same double.
std::string format_real(double v);

// Integral of h(s, 1 - s, s - s_lo) dG(s) over s in (s_lo, x_F^S), continuous
// part of G only. Uses the density with log-scale pieces next to both ends.
using DeflatorIntegrand = std::function<double(double s, double one_minus_s, double s_minus_lo)>;
double deflator_expectation(const TailModel& S, double s_lo, const DeflatorIntegrand& h,
                            double rel_tol = 1e-12);

double mellin_moment(const TailModel& S, double kappa);
double log_moment(const TailModel& S, double alpha);

// (f(tx)/f(t) - x^alpha)/A(t) - H_{alpha,rho}(x) for each t in t_grid.
std::vector<double> rv2_convergence_check(const RealMap& f, double alpha, double rho, const RealMap& A,
                                          double x, const std::vector<double>& t_grid);

double rv2_limit(double alpha, double rho, double x);

} // namespace drisk
