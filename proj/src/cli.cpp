#include "drisk/cli.hpp"

#include "drisk/aggregation.hpp"
#include "drisk/errors.hpp"
#include "drisk/estimators.hpp"
#include "drisk/expansions.hpp"
#include "drisk/oracle.hpp"
#include "drisk/parallel.hpp"
#include "drisk/riskmetrics.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <map>
#include <memory>
#include <set>
#include <sstream>

namespace drisk::cli {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string trim(const std::string& s)
{
    const auto b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep)
{
    std::vector<std::string> parts;
    std::string cur;
    std::istringstream ss(s);
    while (std::getline(ss, cur, sep)) parts.push_back(trim(cur));
    if (!s.empty() && s.back() == sep) parts.emplace_back();
    return parts;
}

double parse_number(const std::string& text, const std::string& flag)
{
    const std::string t = trim(text);
    double v = 0.0;
    const auto res = std::from_chars(t.data(), t.data() + t.size(), v);
    if (t.empty() || res.ec != std::errc() || res.ptr != t.data() + t.size())
        throw DomainError(flag + ": '" + text + "' is not a number");
    return v;
}

std::size_t parse_count(const std::string& text, const std::string& flag)
{
    const std::string t = trim(text);
    std::size_t v = 0;
    const auto res = std::from_chars(t.data(), t.data() + t.size(), v);
    if (t.empty() || res.ec != std::errc() || res.ptr != t.data() + t.size())
        throw DomainError(flag + ": '" + text + "' is not a nonnegative integer");
    return v;
}

std::string join_reals(const std::vector<double>& v)
{
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ',';
        s += format_real(v[i]);
    }
    return s;
}

std::string csv_number(double v)
{
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

} // namespace

Grid Grid::parse(const std::string& text)
{
    Grid g;
    g.given = true;
    const std::string t = trim(text);
    if (t.empty()) return g;
    if (t.find(':') != std::string::npos) {
        const auto parts = split(t, ':');
        if (parts.size() < 3 || parts.size() > 4) throw DomainError("grid range must read lo:hi:n or lo:hi:n:log");
        Range r;
        r.lo = parse_number(parts[0], "grid");
        r.hi = parse_number(parts[1], "grid");
        r.n = parse_count(parts[2], "grid");
        if (parts.size() == 4) {
            if (parts[3] == "log") r.log = true;
            else if (parts[3] != "lin") throw DomainError("grid spacing must be 'lin' or 'log'");
        }
        if (r.n == 0) throw DomainError("grid range needs n >= 1");
        if (r.log && !(r.lo > 0.0 && r.hi > 0.0)) throw DomainError("log grid needs positive end points");
        for (std::size_t i = 0; i < r.n; ++i) {
            if (r.n == 1) {
                g.values.push_back(r.lo);
                break;
            }
            const double f = static_cast<double>(i) / static_cast<double>(r.n - 1);
            double v = r.log ? r.lo * std::pow(r.hi / r.lo, f) : r.lo + (r.hi - r.lo) * f;
            if (i + 1 == r.n) v = r.hi;
            g.values.push_back(v);
        }
        g.range = r;
        return g;
    }
    for (const auto& part : split(t, ',')) g.values.push_back(parse_number(part, "grid"));
    return g;
}

std::string Grid::to_text() const
{
    if (range) {
        std::string s = format_real(range->lo) + ":" + format_real(range->hi) + ":" + std::to_string(range->n);
        if (range->log) s += ":log";
        return s;
    }
    return join_reals(values);
}

std::string RunConfig::serialize() const
{
    std::ostringstream os;
    os << command;
    auto quoted = [](const std::string& v) { return v.empty() ? std::string("\"\"") : v; };
    if (!risk.empty()) os << " --r " << risk;
    if (!deflator.empty()) os << " --s " << deflator;
    if (!in.empty()) os << " --in " << in;
    if (x.given) os << " --x " << quoted(x.to_text());
    if (p.given) os << " --p " << quoted(p.to_text());
    if (k) os << " --k " << k->first << ':' << k->second;
    if (n) os << " --n " << *n;
    if (command == "estimate" || command == "aggregate" || command == "simulate") os << " --seed " << seed;
    if (!method.empty()) os << " --method " << method;
    if (lambda) os << " --lambda " << format_real(*lambda);
    if (!signs.empty()) os << " --signs " << join_reals(signs);
    if (mc) os << " --mc " << *mc;
    if (exact) os << " --exact";
    os << " --format " << format;
    return os.str();
}

namespace {

struct Holders {
    std::string r, s, x, p, k, method, signs, in, format = "csv", out, summary, n, seed, lambda, mc;
    bool exact = false;
};

struct CommandSpec {
    const char* name;
    const char* help;
    std::set<std::string> flags;
};

const std::vector<CommandSpec>& command_specs()
{
    static const std::vector<CommandSpec> specs = {
        {"approx", "first- and second-order tail approximations of R*S on an x grid", {"r", "s", "x"}},
        {"compare", "approximations next to the quadrature oracle with relative errors", {"r", "s", "x"}},
        {"var", "Value-at-Risk approximations at levels p", {"r", "s", "p"}},
        {"estimate", "estimator path over k from a sample file or a simulated sample",
         {"r", "s", "in", "n", "seed", "x", "p", "k", "method", "summary"}},
        {"aggregate", "tails of the aggregated risk V(lambda) = R S(lambda)",
         {"r", "s", "x", "lambda", "signs", "mc", "exact", "seed"}},
        {"simulate", "draw a sample of (R, S) and write it as CSV", {"r", "s", "n", "seed"}},
    };
    return specs;
}

std::unique_ptr<CLI::App> build_app(Holders& h)
{
    auto app = std::make_unique<CLI::App>("Tail approximations for randomly deflated risks", "drisk");
    app->set_version_flag("--version", kVersion);
    app->require_subcommand(1, 1);
    for (const auto& spec : command_specs()) {
        auto* sub = app->add_subcommand(spec.name, spec.help);
        auto has = [&](const char* f) { return spec.flags.count(f) > 0; };
        if (has("r")) sub->add_option("--r", h.r, "risk model, family:key=value,...");
        if (has("s")) sub->add_option("--s", h.s, "deflator model, family:key=value,...");
        if (has("in")) sub->add_option("--in", h.in, "sample CSV written by 'simulate'");
        if (has("x")) sub->add_option("--x", h.x, "x grid: list a,b,c or range lo:hi:n[:log]");
        if (has("p")) sub->add_option("--p", h.p, "probability levels: list or range");
        if (has("k")) sub->add_option("--k", h.k, "k range lo:hi");
        if (has("n")) sub->add_option("--n", h.n, "sample size");
        if (has("seed")) sub->add_option("--seed", h.seed, "64-bit seed");
        if (has("method")) sub->add_option("--method", h.method, "heavy_RS, heavy_X, weibull_RS or weibull_X");
        if (has("lambda")) sub->add_option("--lambda", h.lambda, "aggregation weight in [0,1]");
        if (has("signs")) sub->add_option("--signs", h.signs, "P(I1=1),P(I2=1) or pp,pm,mp,mm");
        if (has("mc")) sub->add_option("--mc", h.mc, "Monte Carlo draws for the S(lambda) tail");
        if (has("exact")) sub->add_flag("--exact", h.exact, "add the quadrature value of P(V(lambda) > x)");
        if (has("summary")) sub->add_option("--summary", h.summary, "summary JSON path (default <out>.summary.json)");
        sub->add_option("--out", h.out, "output path (default stdout)");
        sub->add_option("--format", h.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    }
    return app;
}

std::uint64_t parse_u64(const std::string& text, const std::string& flag)
{
    const std::string t = trim(text);
    std::uint64_t v = 0;
    const auto res = std::from_chars(t.data(), t.data() + t.size(), v);
    if (t.empty() || res.ec != std::errc() || res.ptr != t.data() + t.size())
        throw DomainError(flag + ": '" + text + "' is not an unsigned 64-bit integer");
    return v;
}

RunConfig finish_config(const CLI::App& app, const Holders& h)
{
    RunConfig c;
    c.command = app.get_subcommands().front()->get_name();
    const auto* sub = app.get_subcommands().front();
    auto given = [&](const char* flag) {
        try {
            return sub->get_option(flag)->count() > 0;
        } catch (const CLI::OptionNotFound&) {
            return false;
        }
    };
    if (given("--r")) c.risk = normalize_spec(h.r);
    if (given("--s")) c.deflator = normalize_spec(h.s);
    if (given("--x")) c.x = Grid::parse(h.x);
    if (given("--p")) c.p = Grid::parse(h.p);
    if (given("--k")) {
        const auto parts = split(h.k, ':');
        if (parts.size() != 2) throw DomainError("--k must read lo:hi");
        c.k = std::make_pair(parse_count(parts[0], "--k"), parse_count(parts[1], "--k"));
        if (c.k->first == 0 || c.k->first > c.k->second) throw DomainError("--k needs 1 <= lo <= hi");
    }
    if (given("--n")) c.n = parse_count(h.n, "--n");
    if (given("--seed")) c.seed = parse_u64(h.seed, "--seed");
    if (given("--method")) c.method = to_string(parse_method(h.method));
    if (given("--lambda")) c.lambda = parse_number(h.lambda, "--lambda");
    if (given("--signs")) {
        for (const auto& part : split(h.signs, ',')) c.signs.push_back(parse_number(part, "--signs"));
        if (c.signs.size() != 2 && c.signs.size() != 4) throw DomainError("--signs takes 2 or 4 probabilities");
    }
    if (given("--mc")) c.mc = parse_u64(h.mc, "--mc");
    c.exact = h.exact;
    c.in = h.in;
    c.format = h.format;
    c.out = h.out;
    c.summary = h.summary;
    return c;
}

void parse_into(CLI::App& app, const std::vector<std::string>& args)
{
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
}

std::vector<std::string> tokenize(const std::string& text)
{
    std::vector<std::string> out;
    std::string cur;
    bool in_quotes = false, have = false;
    for (char ch : text) {
        if (ch == '"') {
            in_quotes = !in_quotes;
            have = true;
        } else if (!in_quotes && (ch == ' ' || ch == '\t' || ch == '\n')) {
            if (have) out.push_back(cur);
            cur.clear();
            have = false;
        } else {
            cur += ch;
            have = true;
        }
    }
    if (have) out.push_back(cur);
    return out;
}

// ---- output ---------------------------------------------------------------

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

std::string header_comment(const RunConfig& c)
{
    return std::string("# drisk ") + kVersion + "\n# config: " + c.serialize() + "\n# seed: " + std::to_string(c.seed) +
           "\n";
}

nlohmann::ordered_json json_number(double v)
{
    if (!std::isfinite(v)) return nullptr;
    return v;
}

nlohmann::ordered_json json_envelope(const RunConfig& c)
{
    nlohmann::ordered_json j;
    j["tool"] = "drisk";
    j["version"] = kVersion;
    j["config"] = c.serialize();
    j["seed"] = c.seed;
    return j;
}

nlohmann::ordered_json table_json(const Table& t)
{
    nlohmann::ordered_json j;
    j["columns"] = t.columns;
    auto rows = nlohmann::ordered_json::array();
    for (const auto& row : t.rows) {
        nlohmann::ordered_json r;
        for (std::size_t i = 0; i < t.columns.size(); ++i) r[t.columns[i]] = json_number(row[i]);
        rows.push_back(std::move(r));
    }
    j["rows"] = std::move(rows);
    return j;
}

std::string render_table(const RunConfig& c, const Table& t)
{
    if (c.format == "json") {
        auto j = json_envelope(c);
        const auto body = table_json(t);
        j["columns"] = body["columns"];
        j["rows"] = body["rows"];
        return j.dump(2) + "\n";
    }
    std::string s = header_comment(c);
    for (std::size_t i = 0; i < t.columns.size(); ++i) s += (i ? "," : "") + t.columns[i];
    s += '\n';
    for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) s += ',';
            s += csv_number(row[i]);
        }
        s += '\n';
    }
    return s;
}

void emit(const std::string& path, const std::string& text, std::ostream& out)
{
    if (path.empty()) {
        out << text;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw DomainError("cannot open '" + path + "' for writing");
    f << text;
    if (!f) throw NumericError("write to '" + path + "' failed", 0.0);
}

// ---- commands -------------------------------------------------------------

struct Models {
    TailModel R, S;
};

Models require_models(const RunConfig& c)
{
    if (c.risk.empty() || c.deflator.empty()) throw DomainError(c.command + " needs --r and --s");
    return {parse_model(c.risk), parse_model(c.deflator)};
}

const std::vector<double>& require_grid(const Grid& g, const char* flag, const std::string& cmd)
{
    if (!g.given) throw DomainError(cmd + " needs " + flag);
    return g.values;
}

Table expansion_table(const std::vector<Expansion>& ex, bool with_exact, const std::vector<double>& exact)
{
    std::set<std::string> names;
    for (const auto& e : ex)
        for (const auto& [k, v] : e.terms) names.insert(k);
    Table t;
    t.columns = {"x", "first_order", "second_order", "correction"};
    for (const auto& n : names) t.columns.push_back("term:" + n);
    if (with_exact) {
        for (const char* col : {"exact", "e1", "e2", "e2_over_e1"}) t.columns.push_back(col);
    }
    for (std::size_t i = 0; i < ex.size(); ++i) {
        const auto& e = ex[i];
        std::vector<double> row{e.x, e.leading, e.second_order, e.correction};
        for (const auto& n : names) {
            const auto it = e.terms.find(n);
            row.push_back(it == e.terms.end() ? kNaN : it->second);
        }
        if (with_exact) {
            const double h = exact[i];
            const double e1 = std::abs(e.leading - h) / h, e2 = std::abs(e.second_order - h) / h;
            row.insert(row.end(), {h, e1, e2, e2 / e1});
        }
        t.rows.push_back(std::move(row));
    }
    return t;
}

std::string cmd_approx(const RunConfig& c, bool compare)
{
    const auto m = require_models(c);
    const auto& xs = require_grid(c.x, "--x", c.command);
    std::vector<Expansion> ex(xs.size());
    std::vector<double> exact(compare ? xs.size() : 0);
    parallel_for(xs.size(), [&](std::size_t i) {
        ex[i] = expand(m.R, m.S, xs[i]);
        if (compare) exact[i] = exact_tail(m.R, m.S, xs[i]);
    });
    return render_table(c, expansion_table(ex, compare, exact));
}

std::string cmd_var(const RunConfig& c)
{
    const auto m = require_models(c);
    const auto& ps = require_grid(c.p, "--p", c.command);
    std::vector<VarReport> reps(ps.size());
    parallel_for(ps.size(), [&](std::size_t i) { reps[i] = var_report(m.R, m.S, ps[i], true); });
    Table t;
    const bool weibull = m.R.mda == MdaClass::GumbelWeibullTail;
    if (weibull) {
        t.columns = {"p", "var_R", "var_weibull", "var_exact"};
    } else {
        t.columns = {"p", "var_R", "var_first", "var_second", "var_exact"};
    }
    for (const auto& r : reps) {
        if (weibull) {
            t.rows.push_back({r.p, r.var_R, r.var_X_second, r.var_X_exact.value_or(kNaN)});
        } else {
            t.rows.push_back({r.p, r.var_R, r.var_X_first, r.var_X_second, r.var_X_exact.value_or(kNaN)});
        }
    }
    return render_table(c, t);
}

void cmd_estimate(const RunConfig& c, std::ostream& out)
{
    SampleSet samples;
    std::optional<TailModel> R, S;
    if (!c.in.empty()) {
        std::ifstream f(c.in, std::ios::binary);
        if (!f) throw DomainError("cannot open '" + c.in + "'");
        samples = read_samples_csv(f);
        const std::string rs = !c.risk.empty() ? c.risk : samples.model_r;
        const std::string ss = !c.deflator.empty() ? c.deflator : samples.model_s;
        if (!rs.empty() && !ss.empty()) {
            R = parse_model(rs);
            S = parse_model(ss);
        }
    } else {
        const auto m = require_models(c);
        R = m.R;
        S = m.S;
        samples = draw_samples(*R, *S, c.n.value_or(5000), c.seed);
    }
    const std::size_t n = samples.n();
    if (n < 4) throw DomainError("estimate needs at least 4 observations");
    const Method method = c.method.empty() ? Method::HeavyRS : parse_method(c.method);

    double x;
    if (c.x.given) {
        if (c.x.values.size() != 1) throw DomainError("estimate takes a single --x");
        x = c.x.values.front();
    } else if (c.p.given) {
        if (c.p.values.size() != 1) throw DomainError("estimate takes a single --p");
        if (!R) throw DomainError("--p needs known models to locate x; pass --x instead");
        x = exact_upper_quantile(*R, *S, c.p.values.front());
    } else {
        throw DomainError("estimate needs --x or --p");
    }
    std::optional<double> true_p;
    if (R) true_p = exact_tail(*R, *S, x);

    std::size_t k_lo = 100, k_hi = std::min<std::size_t>(4500, n - 1);
    if (c.k) {
        k_lo = c.k->first;
        k_hi = c.k->second;
    }
    if (k_hi > n - 1) throw DomainError("--k upper end must be below n = " + std::to_string(n));
    if (k_lo > k_hi) throw DomainError("empty k range");
    std::vector<std::size_t> ks;
    for (std::size_t k = k_lo; k <= k_hi; ++k) ks.push_back(k);
    const auto path = estimator_path(samples, method, ks, x, true_p);

    Table t;
    t.columns = {"k", "estimate_index", "p_hat", "valid"};
    if (true_p) t.columns.push_back("log_ratio");
    for (const auto& pt : path.points) {
        std::vector<double> row{static_cast<double>(pt.k), pt.estimate_index, pt.p_hat, pt.valid ? 1.0 : 0.0};
        if (true_p) row.push_back(pt.valid ? std::log(pt.p_hat / *true_p) : kNaN);
        t.rows.push_back(std::move(row));
    }

    auto [s_lo, s_hi] = stable_k_region(n);
    s_lo = std::max(s_lo, k_lo);
    s_hi = std::min(s_hi, k_hi);
    nlohmann::ordered_json summary;
    summary["method"] = to_string(method);
    summary["n"] = n;
    summary["x"] = json_number(x);
    summary["true_p"] = true_p ? json_number(*true_p) : nlohmann::ordered_json(nullptr);
    summary["k_range"] = {k_lo, k_hi};
    summary["stable_k"] = {s_lo, s_hi};
    const double med = s_lo <= s_hi ? median_p_hat(path, s_lo, s_hi) : kNaN;
    summary["median_p_hat"] = json_number(med);
    summary["iqr_log_p_hat"] = json_number(s_lo <= s_hi ? iqr_log_p_hat(path, s_lo, s_hi) : kNaN);
    summary["median_ratio"] = true_p ? json_number(med / *true_p) : nlohmann::ordered_json(nullptr);
    std::size_t valid = 0;
    for (const auto& pt : path.points) valid += pt.valid;
    summary["valid_points"] = valid;

    if (c.format == "json") {
        auto j = json_envelope(c);
        j["summary"] = summary;
        j["path"] = table_json(t);
        emit(c.out, j.dump(2) + "\n", out);
    } else {
        emit(c.out, render_table(c, t), out);
    }
    std::string summary_path = c.summary;
    if (summary_path.empty() && !c.out.empty() && c.format == "csv") summary_path = c.out + ".summary.json";
    if (!summary_path.empty()) {
        auto j = json_envelope(c);
        j["summary"] = summary;
        emit(summary_path, j.dump(2) + "\n", out);
    }
}

SignLaw sign_law(const RunConfig& c)
{
    if (c.signs.empty()) return SignLaw::independent(0.5, 0.5);
    if (c.signs.size() == 2) return SignLaw::independent(c.signs[0], c.signs[1]);
    SignLaw law{c.signs[0], c.signs[1], c.signs[2], c.signs[3]};
    law.validate();
    return law;
}

std::string cmd_aggregate(const RunConfig& c)
{
    if (!c.lambda) throw DomainError("aggregate needs --lambda");
    if (c.deflator.empty()) throw DomainError("aggregate needs --s");
    const double lambda = *c.lambda;
    const SignLaw law = sign_law(c);
    const TailModel S = parse_model(c.deflator);
    const auto& xs = require_grid(c.x, "--x", c.command);

    if (!c.risk.empty()) {
        if (c.mc) throw DomainError("--mc applies to the S(lambda) tail; drop --r to use it");
        const TailModel R = parse_model(c.risk);
        const auto model = make_aggregation_model(R, S, law, lambda);
        std::vector<Expansion> ex(xs.size());
        std::vector<double> exact(c.exact ? xs.size() : 0);
        parallel_for(xs.size(), [&](std::size_t i) {
            ex[i] = aggregate_expand(model, xs[i]);
            if (c.exact) exact[i] = aggregate_exact_tail(R, S, law, lambda, xs[i]);
        });
        return render_table(c, expansion_table(ex, c.exact, exact));
    }

    // No risk: the local expansion of P(S(lambda) > 1 - x).
    if (c.exact) throw DomainError("--exact needs --r");
    const auto model = make_aggregation_model(S, law, lambda);
    Table t;
    t.columns = {"x", "leading", "second_order", "correction"};
    if (c.mc) {
        t.columns.push_back("mc_estimate");
        t.columns.push_back("mc_std_error");
    }
    for (double x : xs) {
        const auto st = s_lambda_tail(model, x);
        std::vector<double> row{x, st.leading, st.value, st.correction};
        if (c.mc) {
            const auto r = mc_s_lambda_tail(S, law, lambda, x, *c.mc, c.seed);
            row.push_back(r.estimate);
            row.push_back(r.std_error);
        }
        t.rows.push_back(std::move(row));
    }
    return render_table(c, t);
}

std::string cmd_simulate(const RunConfig& c)
{
    const auto m = require_models(c);
    const auto samples = draw_samples(m.R, m.S, c.n.value_or(5000), c.seed);
    if (c.format == "json") {
        auto j = json_envelope(c);
        j["n"] = samples.n();
        j["model_r"] = samples.model_r;
        j["model_s"] = samples.model_s;
        j["r"] = samples.r;
        j["s"] = samples.s;
        j["x"] = samples.x;
        return j.dump(2) + "\n";
    }
    std::ostringstream os;
    os << header_comment(c);
    write_samples_csv(os, samples);
    return os.str();
}

} // namespace

RunConfig parse_run_config(const std::vector<std::string>& args)
{
    Holders h;
    auto app = build_app(h);
    parse_into(*app, args);
    return finish_config(*app, h);
}

RunConfig parse_run_config(const std::string& text)
{
    return parse_run_config(tokenize(text));
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    Holders h;
    auto app = build_app(h);
    try {
        parse_into(*app, args);
    } catch (const CLI::ParseError& e) {
        const int code = app->exit(e, out, err);
        return code == 0 ? 0 : 2;
    }
    try {
        const RunConfig c = finish_config(*app, h);
        if (c.command == "approx") emit(c.out, cmd_approx(c, false), out);
        else if (c.command == "compare") emit(c.out, cmd_approx(c, true), out);
        else if (c.command == "var") emit(c.out, cmd_var(c), out);
        else if (c.command == "estimate") cmd_estimate(c, out);
        else if (c.command == "aggregate") emit(c.out, cmd_aggregate(c), out);
        else if (c.command == "simulate") emit(c.out, cmd_simulate(c), out);
        return 0;
    } catch (const NumericError& e) {
        err << "drisk: numeric failure: " << e.what() << " (achieved " << csv_number(e.achieved()) << ")\n";
        return 1;
    } catch (const CatalogError& e) {
        err << "drisk: " << e.what() << "\n";
        return 2;
    } catch (const RegimeError& e) {
        err << "drisk: regime mismatch: " << e.what() << "\n";
        return 2;
    } catch (const DomainError& e) {
        err << "drisk: " << e.what() << "\n";
        return 2;
    } catch (const ParseError& e) {
        err << "drisk: parse error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        err << "drisk: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "drisk: " << e.what() << "\n";
        return 1;
    }
}

} // namespace drisk::cli
