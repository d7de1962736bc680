#include "drisk/aggregation.hpp"

#include "drisk/errors.hpp"
#include "drisk/quadrature.hpp"
#include "drisk/rng.hpp"
#include "drisk/specfun.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <thread>
#include <vector>

namespace drisk {

namespace sf = specfun;

SignLaw SignLaw::independent(double p1, double p2)
{
    if (!(p1 >= 0.0 && p1 <= 1.0 && p2 >= 0.0 && p2 <= 1.0))
        throw DomainError("sign probabilities must lie in [0,1]");
    return SignLaw{p1 * p2, p1 * (1.0 - p2), (1.0 - p1) * p2, (1.0 - p1) * (1.0 - p2)};
}

void SignLaw::validate() const
{
    for (double p : {p_pp, p_pm, p_mp, p_mm})
        if (!(p >= 0.0 && p <= 1.0)) throw DomainError("sign law entries must lie in [0,1]");
    if (std::abs(p_pp + p_pm + p_mp + p_mm - 1.0) > 1e-12) throw DomainError("sign law must sum to 1");
}

double q_lambda(const SignLaw& law, double lambda)
{
    if (!(lambda >= 0.0 && lambda <= 1.0)) throw DomainError("lambda must lie in [0,1], got " + format_real(lambda));
    law.validate();
    if (lambda == 0.0) return law.p_pp + law.p_mp; // P(I2 = 1)
    if (lambda == 1.0) return law.p_pp + law.p_pm; // P(I1 = 1)
    return law.p_pp;
}

LocalCoeffs beta_local_coeffs(double a, double b, double lambda)
{
    if (!(a > 0.0 && b > 0.0)) throw DomainError("beta_local_coeffs: a and b must be positive");
    LocalCoeffs c;
    c.tau = 1.0;
    if (lambda == 0.0) {
        c.alpha = a;
        c.c = 1.0 / (a * sf::beta(a, b));
        c.L_const = -(b - 1.0) * a / (a + 1.0);
    } else if (lambda == 1.0) {
        c.alpha = b;
        c.c = 1.0 / (b * sf::beta(a, b));
        c.L_const = -(a - 1.0) * b / (b + 1.0);
    } else {
        throw DomainError("beta_local_coeffs: lambda must be 0 or 1");
    }
    return c;
}

LocalCoeffs smooth_local_coeffs(const RealMap& g, double lambda, std::optional<double> g2)
{
    if (!(lambda > 0.0 && lambda < 1.0)) throw DomainError("smooth_local_coeffs: lambda must lie in (0,1)");
    const double g0 = g(lambda);
    if (!(g0 > 0.0)) throw DomainError("smooth_local_coeffs: density vanishes at lambda");
    double second;
    if (g2) {
        second = *g2;
    } else {
        const double h = 1e-3 * std::min(lambda, 1.0 - lambda);
        second = (g(lambda + h) - 2.0 * g0 + g(lambda - h)) / (h * h);
    }
    LocalCoeffs c;
    c.alpha = 1.0;
    c.tau = 2.0;
    c.c = 2.0 * g0;
    c.L_const = second / (6.0 * g0);
    return c;
}

AggregationModel make_aggregation_model(const TailModel& R, const TailModel& S, const SignLaw& law, double lambda)
{
    AggregationModel m = make_aggregation_model(S, law, lambda);
    m.risk = R;
    return m;
}

AggregationModel make_aggregation_model(const TailModel& S, const SignLaw& law, double lambda)
{
    if (!S.on_unit_interval()) throw RegimeError("deflator " + S.spec() + " is not supported on (0,1)");
    AggregationModel m;
    m.lambda = lambda;
    m.q = q_lambda(law, lambda);
    if (!(m.q > 0.0)) throw DomainError("q_lambda is zero: the sign law never reaches the tail");
    m.deflator = S;
    const bool beta = S.family == "beta";
    if (lambda == 0.0 || lambda == 1.0) {
        if (beta) m.coeffs = beta_local_coeffs(S.param("a"), S.param("b"), lambda);
        // other deflators: lambda = 1 runs on the deflator's own 2RV metadata
    } else {
        if (!S.has_density()) throw RegimeError("deflator " + S.spec() + " has no density at lambda");
        std::optional<double> g2;
        if (beta) {
            const double a = S.param("a"), b = S.param("b");
            if (a < 1.0 || b < 1.0)
                throw DomainError("Beta deflator with a < 1 or b < 1 is not supported for lambda in (0,1)");
            const double s = lambda, t = 1.0 - lambda;
            const double ratio = (a - 1.0) * (a - 2.0) / (s * s) - 2.0 * (a - 1.0) * (b - 1.0) / (s * t) +
                                 (b - 1.0) * (b - 2.0) / (t * t);
            g2 = ratio * S.density(lambda);
        }
        const TailModel* sp = &S;
        m.coeffs = smooth_local_coeffs([sp](double s) { return sp->density(s); }, lambda, g2);
    }
    return m;
}

namespace {

void require_coeffs(const AggregationModel& model)
{
    if (!(model.lambda >= 0.0 && model.lambda <= 1.0)) throw DomainError("lambda must lie in [0,1]");
    if (!(model.q > 0.0 && model.q <= 1.0)) throw DomainError("q_lambda must lie in (0,1]");
    const auto& c = model.coeffs;
    if (!(c.c > 0.0 && c.alpha > 0.0 && c.tau > 0.0)) throw RegimeError("lambda-coefficients missing");
}

// Correction A_lambda(x) of the S(lambda) tail expansion.
double script_A(const AggregationModel& model, double x)
{
    const auto& c = model.coeffs;
    const double lam = model.lambda;
    if (lam == 1.0) return c.L_at(x) * std::pow(x, c.tau);
    if (lam == 0.0) return c.L_at(std::sqrt(x)) * std::pow(2.0 * x, 0.5 * c.tau) - c.alpha * x / 4.0;
    const double om = 1.0 - lam * lam;
    return c.L_at(std::sqrt(x)) * std::pow(2.0 * x * om, 0.5 * c.tau) - c.alpha * lam * std::sqrt(x) / std::sqrt(2.0 * om);
}

} // namespace

SLambdaTail s_lambda_tail(const AggregationModel& model, double x)
{
    require_coeffs(model);
    if (!(x > 0.0 && x < model.x_cut))
        throw DomainError("s_lambda_tail: x must lie in (0, " + format_real(model.x_cut) + ")");
    const auto& c = model.coeffs;
    const double lam = model.lambda;
    SLambdaTail out;
    if (lam == 1.0) {
        out.leading = model.q * c.c * std::pow(x, c.alpha);
    } else {
        const double base = lam == 0.0 ? 2.0 * x : 2.0 * x * (1.0 - lam * lam);
        out.leading = model.q * c.c * std::pow(base, 0.5 * c.alpha);
    }
    out.correction = script_A(model, x);
    out.value = out.leading * (1.0 + out.correction);
    return out;
}

AggregatedParams aggregated_params(const AggregationModel& model)
{
    require_coeffs(model);
    const auto& c = model.coeffs;
    const double lam = model.lambda;
    AggregatedParams p;
    if (lam == 1.0) {
        p.alpha = c.alpha;
        p.tau = -c.tau;
    } else if (lam == 0.0) {
        p.alpha = 0.5 * c.alpha;
        p.tau = -0.5 * std::min(c.tau, 2.0);
    } else {
        p.alpha = 0.5 * c.alpha;
        p.tau = -0.5 * std::min(c.tau, 1.0);
    }
    const double tau = p.tau;
    p.A = [model, tau](double x) { return tau * script_A(model, 1.0 / x); };
    return p;
}

Expansion aggregate_expand(const AggregationModel& model, double x)
{
    if (!model.risk) throw DomainError("aggregate_expand: the model has no risk law");
    const TailModel& R = *model.risk;
    const bool gumbel = R.is_gumbel();
    if (!gumbel && !(R.mda == MdaClass::Weibull && R.x_high == 1.0))
        throw RegimeError("aggregation needs a Gumbel-domain risk or a Weibull-domain risk with x_F = 1; " + R.spec() +
                          " is " + to_string(R.mda));

    DeflatorTail D;
    const bool own_meta = model.lambda == 1.0 && model.deflator && model.deflator->meta.alpha2 &&
                          model.deflator->meta.tau2 && model.deflator->meta.A;
    if (own_meta) {
        // S(1) = I1 S: the plain-product path scaled by q.
        if (!(model.q > 0.0 && model.q <= 1.0)) throw DomainError("q_lambda must lie in (0,1]");
        D = deflator_tail(*model.deflator, gumbel);
        const double q = model.q;
        auto base = D.tail;
        D.tail = [q, base](double d) { return q * base(d); };
    } else {
        const auto p = aggregated_params(model);
        D.alpha2 = p.alpha;
        D.tau2 = p.tau;
        D.A = p.A;
        D.tail = [model](double d) { return s_lambda_tail(model, d).value; };
    }
    if (gumbel) return detail::gumbel_kernel(R, D, x);
    return detail::weibull_mda_kernel(R, D, x, WeibullMdaVariant::QuantileAux);
}

double aggregate_exact_tail(const TailModel& R, const TailModel& S, const SignLaw& law, double lambda, double x)
{
    if (!(lambda >= 0.0 && lambda <= 1.0)) throw DomainError("lambda must lie in [0,1]");
    law.validate();
    if (!S.on_unit_interval() || !S.has_density()) throw RegimeError("deflator " + S.spec() + " needs a density on (0,1)");
    if (!(x > 0.0)) throw DomainError("aggregate_exact_tail: x must be positive");
    // S = cos(phi); S(lambda) = cos(phi - phi_l) for (+,+), cos(phi + phi_l)
    // for (+,-), -cos(phi + phi_l) for (-,+) and is negative for (-,-).
    const double half_pi = 0.5 * std::numbers::pi;
    const double phl = std::acos(lambda);
    auto tail_at = [&](double s) { return s > 0.0 ? R.survival(x / s) : 0.0; };
    auto f = [&](double phi) {
        const double s = std::cos(phi);
        if (!(s > 0.0 && s < 1.0)) return 0.0;
        const double w = S.density(s) * std::sin(phi);
        if (w == 0.0) return 0.0;
        double v = 0.0;
        if (law.p_pp > 0.0) v += law.p_pp * tail_at(std::cos(phi - phl));
        if (law.p_pm > 0.0) v += law.p_pm * tail_at(std::cos(phi + phl));
        if (law.p_mp > 0.0) v += law.p_mp * tail_at(-std::cos(phi + phl));
        return w * v;
    };
    std::vector<double> cuts{0.0, phl, half_pi - phl, half_pi};
    std::sort(cuts.begin(), cuts.end());
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        const double a = std::clamp(cuts[i], 0.0, half_pi), b = std::clamp(cuts[i + 1], 0.0, half_pi);
        if (b > a) total += quad::integrate(f, a, b, 1e-10).value;
    }
    return total;
}

McResult mc_s_lambda_tail(const TailModel& S, const SignLaw& law, double lambda, double x, std::uint64_t draws,
                          std::uint64_t seed)
{
    const double q = q_lambda(law, lambda);
    if (!S.on_unit_interval() || !S.has_density()) throw RegimeError("deflator " + S.spec() + " needs a density on (0,1)");
    if (!(x > 0.0 && x < 0.05)) throw DomainError("mc_s_lambda_tail: x must lie in (0, 0.05)");
    if (draws == 0) throw DomainError("mc_s_lambda_tail: draws must be positive");
    const double lam = lambda;
    const double om = std::sqrt(1.0 - lam * lam);
    if (lam > 0.0 && lam < 1.0 && std::max(lam, om) >= 1.0 - x)
        throw DomainError("mc_s_lambda_tail: x too large, mixed sign events reach the tail");

    // Window of S holding the event {S(lambda) > 1 - x} for the sign pattern
    // that reaches the tail.
    double lo, hi;
    if (lam == 1.0) {
        lo = std::max(0.0, 1.0 - 2.0 * x);
        hi = 1.0;
    } else if (lam == 0.0) {
        lo = 0.0;
        hi = std::min(1.0, std::sqrt(4.0 * x));
    } else {
        const double w = 2.0 * std::acos(1.0 - x);
        lo = std::max(0.0, lam - w);
        hi = std::min(1.0, lam + w);
    }
    const double mass = S.survival(lo) - S.survival(hi);
    if (!(mass > 0.0)) throw NumericError("mc_s_lambda_tail: the window carries no mass", 0.0);

    // Envelope for rejection sampling from g restricted to the window.
    double gmax = 0.0;
    constexpr int grid = 512;
    for (int i = 0; i <= grid; ++i) {
        const double s = lo + (hi - lo) * (i + 0.5 * (i == 0) - 0.5 * (i == grid)) / grid;
        gmax = std::max(gmax, S.density(s));
    }
    if (!std::isfinite(gmax) || !(gmax > 0.0)) throw NumericError("mc_s_lambda_tail: no finite density envelope", gmax);
    const double envelope = 1.05 * gmax;

    auto in_event = [lam, om, x](double s) {
        if (lam == 1.0) return s > 1.0 - x;
        if (lam == 0.0) return std::sqrt((1.0 - s) * (1.0 + s)) > 1.0 - x;
        return lam * s + om * std::sqrt((1.0 - s) * (1.0 + s)) > 1.0 - x;
    };

    // Fixed chunking keeps the result independent of the thread count.
    constexpr std::uint32_t chunks = 64;
    const Philox4x32 rng(seed);
    std::vector<std::uint64_t> hits(chunks, 0);
    std::atomic<std::uint32_t> next{0};
    std::atomic<bool> envelope_broken{false};
    auto work = [&]() {
        for (std::uint32_t c = next++; c < chunks; c = next++) {
            const std::uint64_t target = draws / chunks + (c < draws % chunks ? 1 : 0);
            std::uint64_t accepted = 0, h = 0;
            for (std::uint64_t i = 0; accepted < target; ++i) {
                const auto u = rng.uniform_pair(i, 1000 + c);
                const double s = lo + (hi - lo) * u[0];
                const double g = S.density(s);
                if (g > envelope) envelope_broken = true;
                if (u[1] * envelope > g) continue;
                ++accepted;
                if (in_event(s)) ++h;
            }
            hits[c] = h;
        }
    };
    const unsigned nthreads = std::max(1u, std::min(std::thread::hardware_concurrency(), chunks));
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < nthreads; ++t) pool.emplace_back(work);
    work();
    for (auto& t : pool) t.join();
    if (envelope_broken) throw NumericError("mc_s_lambda_tail: density exceeded the rejection envelope", envelope);

    McResult r;
    r.draws = draws;
    for (auto h : hits) r.hits += h;
    r.window_mass = mass;
    const double ph = static_cast<double>(r.hits) / static_cast<double>(draws);
    r.estimate = q * mass * ph;
    r.std_error = q * mass * std::sqrt(ph * (1.0 - ph) / static_cast<double>(draws));
    return r;
}

} // namespace drisk
