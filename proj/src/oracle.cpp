#include "drisk/oracle.hpp"

#include "drisk/errors.hpp"
#include "drisk/expansions.hpp"
#include "drisk/quadrature.hpp"
#include "drisk/rng.hpp"

#include <boost/math/tools/roots.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstring>
#include <istream>
#include <limits>
#include <mutex>
#include <ostream>
#include <sstream>
#include <unordered_map>

namespace drisk {

namespace {

std::mutex cache_mutex;
std::unordered_map<std::string, double> tail_cache;

std::string cache_key(const TailModel& R, const TailModel& S, double x)
{
    std::uint64_t bits;
    std::memcpy(&bits, &x, sizeof bits);
    return R.spec() + "|" + S.spec() + "|" + std::to_string(bits);
}

// E{Fbar(x/S); S < kink}
double below_kink(const TailModel& R, const TailModel& S, double x, double kink)
{
    const double lo = S.x_low, half = 0.5 * (kink - lo);
    if (S.has_density()) {
        auto f = [&](double s) {
            if (s <= 0.0) return 0.0;
            const double v = R.survival(x / s);
            return v == 0.0 ? 0.0 : v * std::exp(S.log_density(s));
        };
        return quad::integrate_near_zero([&](double e) { return f(lo + e); }, half, 1e-12).value
               + quad::integrate(f, lo + half, kink, 1e-12).value;
    }
    const double mass = S.cdf(kink);
    auto f = [&](double u) {
        const double s = S.quantile(u);
        return s <= 0.0 ? 0.0 : R.survival(x / s);
    };
    return quad::integrate_near_zero(f, 0.5 * mass, 1e-12).value + quad::integrate(f, 0.5 * mass, mass, 1e-12).value;
}

double compute_tail(const TailModel& R, const TailModel& S, double x)
{
    if (x < 0.0) return 1.0;
    if (x == 0.0) return R.survival(0.0) * (1.0 - S.atom_at_low());
    const double xF = R.x_high;
    const bool finite_top = std::isfinite(xF);
    const double s_lo = finite_top ? x / xF : 0.0;
    DeflatorIntegrand h;
    if (finite_top) {
        h = [&R, x, xF](double s, double, double e) {
            if (s <= 0.0) return 0.0;
            // x_F - x/s = x_F (s - s_lo)/s
            return R.survival_below_top(xF * e / s);
        };
    } else {
        h = [&R, x](double s, double, double) { return s <= 0.0 ? 0.0 : R.survival(x / s); };
        // Fbar(x/s) = 1 for s >= x/x_low: split there instead of integrating across the kink
        const double kink = R.x_low > 0.0 ? x / R.x_low : 0.0;
        if (kink > S.x_low && kink < S.x_high) return S.survival(kink) + below_kink(R, S, x, kink);
    }
    return deflator_expectation(S, s_lo, h, 1e-12);
}

} // namespace

double exact_tail(const TailModel& R, const TailModel& S, double x)
{
    if (std::isnan(x)) throw DomainError("exact_tail: x is NaN");
    const std::string key = cache_key(R, S, x);
    {
        std::lock_guard<std::mutex> lock(cache_mutex);
        auto it = tail_cache.find(key);
        if (it != tail_cache.end()) return it->second;
    }
    const double v = std::clamp(compute_tail(R, S, x), 0.0, 1.0);
    std::lock_guard<std::mutex> lock(cache_mutex);
    tail_cache.emplace(key, v);
    return v;
}

double exact_upper_quantile(const TailModel& R, const TailModel& S, double u)
{
    if (!(u > 0.0 && u < 1.0)) throw DomainError("exact quantile: level must lie in (0,1)");
    const double lo = 0.0;
    if (exact_tail(R, S, lo) <= u) return lo;
    double hi = R.upper_quantile(u); // H <= Fbar, so H(hi) <= u
    if (!(hi > lo)) return lo;
    const double target = std::log(u);
    auto f = [&](double x) {
        const double h = exact_tail(R, S, x);
        return h > 0.0 ? std::log(h) - target : -1e300;
    };
    double f_hi = f(hi);
    if (f_hi >= 0.0) return hi;
    std::uintmax_t iters = 200;
    auto tol = [](double a, double b) { return std::fabs(b - a) <= 1e-14 * std::max(std::fabs(a), std::fabs(b)); };
    const double f_lo = f(lo);
    auto res = boost::math::tools::toms748_solve(f, lo, hi, f_lo, f_hi, tol, iters);
    const double x = 0.5 * (res.first + res.second);
    if (iters >= 200) throw NumericError("exact quantile: root finding did not converge", std::fabs(f(x)));
    return x;
}

double exact_quantile(const TailModel& R, const TailModel& S, double p)
{
    if (!(p > 0.0 && p < 1.0)) throw DomainError("exact_quantile: p must lie in (0,1)");
    return exact_upper_quantile(R, S, 1.0 - p);
}

ProductAux product_aux(const TailModel& R, const TailModel& S, double t)
{
    if (!(t > 1.0)) throw DomainError("product_aux: t must exceed 1");
    const double x = exact_upper_quantile(R, S, 1.0 / t);
    const auto sr = gumbel_shift_ratio(R, S, x, 0.0);
    return {x, sr.a_breve, sr.A_breve};
}

void SampleSet::sort_all()
{
    r_sorted = r;
    s_sorted = s;
    x_sorted = x;
    std::sort(r_sorted.begin(), r_sorted.end());
    std::sort(s_sorted.begin(), s_sorted.end());
    std::sort(x_sorted.begin(), x_sorted.end());
}

SampleSet draw_samples(const TailModel& R, const TailModel& S, std::size_t n, std::uint64_t seed)
{
    if (n == 0) throw DomainError("draw_samples: n must be at least 1");
    if (!S.on_unit_interval()) throw DomainError("draw_samples: deflator must be supported on (0,1)");
    if (S.atom_at_low() > 0.0) throw DomainError("draw_samples: deflator " + S.spec() + " has an atom at 0");
    const Philox4x32 gen(seed);
    SampleSet out;
    out.seed = seed;
    out.model_r = R.spec();
    out.model_s = S.spec();
    out.r.resize(n);
    out.s.resize(n);
    out.x.resize(n);
    const double s_max = std::nextafter(1.0, 0.0);
    const double s_min = std::numeric_limits<double>::min();
    for (std::size_t i = 0; i < n; ++i) {
        // Upper quantiles keep relative accuracy in both tails that matter.
        const double r = R.upper_quantile(gen.uniform(i, 0));
        const double s = std::clamp(S.upper_quantile(gen.uniform(i, 1)), s_min, s_max);
        out.r[i] = r;
        out.s[i] = s;
        out.x[i] = r * s;
    }
    out.sort_all();
    return out;
}

double empirical_tail(const SampleSet& samples, Which which, double x)
{
    const auto& v = which == Which::R ? samples.r_sorted : which == Which::S ? samples.s_sorted : samples.x_sorted;
    if (v.empty()) return 0.0;
    const auto it = std::upper_bound(v.begin(), v.end(), x);
    return static_cast<double>(v.end() - it) / static_cast<double>(v.size());
}

namespace {

std::string fmt17(double v)
{
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

double parse_double(const std::string& t, std::size_t line)
{
    double v = 0.0;
    const char* b = t.data();
    const char* e = b + t.size();
    while (b < e && std::isspace(static_cast<unsigned char>(*b))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(e[-1]))) --e;
    auto res = std::from_chars(b, e, v);
    if (res.ec != std::errc() || res.ptr != e) throw ParseError("bad number '" + t + "'", line);
    return v;
}

} // namespace

void write_samples_csv(std::ostream& os, const SampleSet& samples)
{
    os << "# seed=" << samples.seed << " n=" << samples.n() << " model_r=" << samples.model_r
       << " model_s=" << samples.model_s << "\n";
    os << "r,s,x\n";
    for (std::size_t i = 0; i < samples.n(); ++i)
        os << fmt17(samples.r[i]) << ',' << fmt17(samples.s[i]) << ',' << fmt17(samples.x[i]) << '\n';
}

SampleSet read_samples_csv(std::istream& is)
{
    SampleSet out;
    std::string line;
    std::size_t lineno = 0;
    bool header = false;
    std::size_t ncols = 3;
    long long declared_n = -1;
    while (std::getline(is, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line[0] == '#') {
            std::istringstream ss(line.substr(1));
            std::string tok;
            while (ss >> tok) {
                const auto eq = tok.find('=');
                if (eq == std::string::npos) continue;
                const std::string k = tok.substr(0, eq), v = tok.substr(eq + 1);
                if (k == "seed") {
                    auto res = std::from_chars(v.data(), v.data() + v.size(), out.seed);
                    if (res.ec != std::errc()) throw ParseError("bad seed '" + v + "'", lineno);
                } else if (k == "n") {
                    declared_n = std::stoll(v);
                } else if (k == "model_r") {
                    out.model_r = v;
                } else if (k == "model_s") {
                    out.model_s = v;
                }
            }
            continue;
        }
        if (!header) {
            std::string h;
            for (char ch : line)
                if (!std::isspace(static_cast<unsigned char>(ch))) h += ch;
            if (h != "r,s,x" && h != "r,s") throw ParseError("expected header 'r,s,x'", lineno);
            header = true;
            ncols = h == "r,s" ? 2 : 3;
            continue;
        }
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        if (cells.size() != ncols)
            throw ParseError("expected " + std::to_string(ncols) + " columns, got " + std::to_string(cells.size()), lineno);
        const double r = parse_double(cells[0], lineno);
        const double s = parse_double(cells[1], lineno);
        if (!(s > 0.0 && s < 1.0)) throw ParseError("deflator value outside (0,1)", lineno);
        out.r.push_back(r);
        out.s.push_back(s);
        out.x.push_back(r * s);
    }
    if (!header) throw ParseError("missing header 'r,s,x'", lineno);
    if (declared_n >= 0 && static_cast<std::size_t>(declared_n) != out.n())
        throw ParseError("header declares n=" + std::to_string(declared_n) + " but found " + std::to_string(out.n()) + " rows", lineno);
    out.sort_all();
    return out;
}

} // namespace drisk
