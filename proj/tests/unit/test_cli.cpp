#include "drisk/cli.hpp"
#include "drisk/oracle.hpp"
#include "drisk/riskmetrics.hpp"
#include "drisk/specfun.hpp"

#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace drisk;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    int code;
    std::string out, err;
};

std::vector<std::string> split(const std::string& text)
{
    std::istringstream ss(text);
    std::vector<std::string> v;
    for (std::string w; ss >> w;) v.push_back(w);
    return v;
}

Outcome drisk_run(const std::string& args)
{
    std::ostringstream out, err;
    const int code = cli::run(split(args), out, err);
    return {code, out.str(), err.str()};
}

struct Csv {
    std::vector<std::string> comments, columns;
    std::vector<std::vector<double>> rows;

    std::size_t col(const std::string& name) const
    {
        for (std::size_t i = 0; i < columns.size(); ++i)
            if (columns[i] == name) return i;
        FAIL("no column " << name);
        return 0;
    }
};

Csv parse_csv(const std::string& text)
{
    Csv c;
    std::istringstream ss(text);
    for (std::string line; std::getline(ss, line);) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            c.comments.push_back(line);
            continue;
        }
        std::vector<std::string> cells;
        std::stringstream ls(line);
        for (std::string cell; std::getline(ls, cell, ',');) cells.push_back(cell);
        if (c.columns.empty()) {
            c.columns = cells;
            continue;
        }
        std::vector<double> row;
        for (const auto& v : cells) row.push_back(std::strtod(v.c_str(), nullptr));
        c.rows.push_back(row);
    }
    return c;
}

std::string data_lines(const std::string& text)
{
    std::istringstream ss(text);
    std::string out;
    for (std::string line; std::getline(ss, line);)
        if (!line.empty() && line[0] != '#') out += line + "\n";
    return out;
}

std::string slurp(const fs::path& p)
{
    std::ifstream f(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

fs::path scratch_dir()
{
    const auto d = fs::temp_directory_path() / ("drisk_unit_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
}

} // namespace

TEST_SUITE("cli")
{
    TEST_CASE("approx")
    {
        const auto r = drisk_run("approx --r pareto:alpha=2,theta=1 --s beta:a=1,b=2 --x 10,100");
        REQUIRE(r.code == 0);
        const auto t = parse_csv(r.out);
        REQUIRE(t.rows.size() == 2);
        CHECK(t.rows[1][t.col("x")] == 100.0);
        CHECK(t.rows[1][t.col("correction")] == doctest::Approx(0.008).epsilon(1e-13));
        CHECK(t.rows[1][t.col("first_order")] == doctest::Approx(std::pow(1.0 / 101.0, 2) / 6.0).epsilon(1e-15));
        REQUIRE(t.comments.size() >= 3);
        CHECK(t.comments[0] == "# drisk 1.0.0");
        CHECK(t.comments[1].rfind("# config: approx --r pareto:alpha=2,theta=1 --s beta:a=1,b=2", 0) == 0);
        CHECK(t.comments[2] == "# seed: 1");
    }

    TEST_CASE("unknown family")
    {
        const auto r = drisk_run("approx --r nosuch:a=1 --s beta:a=1,b=2 --x 10");
        CHECK(r.code == 2);
        CHECK(r.err.find("pareto") != std::string::npos);
        CHECK(r.err.find("e1c") != std::string::npos);
    }

    TEST_CASE("regime mismatch names the expected theorem")
    {
        const auto r = drisk_run("approx --r gamma:alpha=2,lambda=1 --s pareto:alpha=2,theta=1 --x 10");
        CHECK(r.code == 2);
    }

    TEST_CASE("compare")
    {
        const auto r = drisk_run("compare --r gamma:alpha=1,lambda=1 --s beta:a=0.5,b=0.5 --x 2:20:10");
        REQUIRE(r.code == 0);
        const auto t = parse_csv(r.out);
        REQUIRE(t.rows.size() == 10);
        for (const auto& row : t.rows)
            CHECK(std::abs(row[t.col("exact")] - specfun::reg_inc_gamma_upper(0.5, row[t.col("x")])) <= 1e-8);
        const auto& last = t.rows.back();
        CHECK(last[t.col("e2_over_e1")] < 1.0);
        CHECK(last[t.col("e2")] == doctest::Approx(last[t.col("e2")])); // finite
    }

    TEST_CASE("empty grid")
    {
        std::ostringstream out, err;
        const int code = cli::run({"approx", "--r", "pareto:alpha=2,theta=1", "--s", "beta:a=1,b=2", "--x", ""}, out, err);
        CHECK(code == 0);
        const auto t = parse_csv(out.str());
        CHECK(t.rows.empty());
        CHECK(!t.columns.empty());
    }

    TEST_CASE("var")
    {
        const auto r = drisk_run("var --r pareto:alpha=2,theta=1 --s beta:a=1,b=2 --p 0.99,0.9999");
        REQUIRE(r.code == 0);
        const auto t = parse_csv(r.out);
        REQUIRE(t.rows.size() == 2);
        CHECK(t.rows[0][t.col("var_first")] == doctest::Approx(3.6742).epsilon(1e-4));
        const auto R = parse_model("pareto:alpha=2,theta=1"), S = parse_model("beta:a=1,b=2");
        CHECK(t.rows[1][t.col("var_exact")] == doctest::Approx(exact_quantile(R, S, 0.9999)).epsilon(1e-15));

        CHECK(drisk_run("var --r pareto:alpha=2,theta=1 --s beta:a=1,b=2 --p 1.5").code == 2);
        CHECK(drisk_run("var --r pareto:alpha=2,theta=1 --s beta:a=1,b=2 --p 0").code == 2);

        const auto w = drisk_run("var --r gamma:alpha=1,lambda=1 --s beta:a=0.5,b=0.5 --p 0.999999");
        REQUIRE(w.code == 0);
        const auto tw = parse_csv(w.out);
        CHECK(tw.columns == std::vector<std::string>{"p", "var_R", "var_weibull", "var_exact"});
        CHECK(tw.rows[0][tw.col("var_weibull")] == doctest::Approx(12.5026).epsilon(1e-5));
    }

    TEST_CASE("estimate: path shape and reproducibility")
    {
        const auto dir = scratch_dir();
        const std::string base = "estimate --r pareto:alpha=2,theta=1 --s beta:a=1,b=2 --n 5000 --seed 42 --method heavy_RS --p 1e-4";
        const auto a = drisk_run(base + " --out " + (dir / "a.csv").string());
        const auto b = drisk_run(base + " --out " + (dir / "b.csv").string());
        REQUIRE(a.code == 0);
        REQUIRE(b.code == 0);
        const std::string ta = slurp(dir / "a.csv"), tb = slurp(dir / "b.csv");
        CHECK(ta == tb);
        CHECK(slurp(dir / "a.csv.summary.json") == slurp(dir / "b.csv.summary.json"));
        const auto t = parse_csv(ta);
        CHECK(t.rows.size() == 4401);
        CHECK(t.rows.front()[0] == 100.0);
        CHECK(t.rows.back()[0] == 4500.0);
        CHECK(t.columns == std::vector<std::string>{"k", "estimate_index", "p_hat", "valid", "log_ratio"});
        fs::remove_all(dir);
    }

    TEST_CASE("simulate then estimate from the file")
    {
        const auto dir = scratch_dir();
        const auto sim = drisk_run("simulate --r gamma:alpha=1,lambda=1 --s beta:a=0.5,b=0.5 --n 2000 --seed 7 --out " +
                                   (dir / "s.csv").string());
        REQUIRE(sim.code == 0);
        const auto est = drisk_run("estimate --in " + (dir / "s.csv").string() + " --method weibull_RS --x 10 --k 100:600");
        REQUIRE(est.code == 0);
        const auto t = parse_csv(est.out);
        CHECK(t.rows.size() == 501);
        // models travel with the file, so the oracle column is present
        CHECK(t.columns.back() == "log_ratio");

        const auto direct = drisk_run("estimate --r gamma:alpha=1,lambda=1 --s beta:a=0.5,b=0.5 --n 2000 --seed 7 "
                                      "--method weibull_RS --x 10 --k 100:600");
        REQUIRE(direct.code == 0);
        CHECK(data_lines(direct.out) == data_lines(est.out));

        std::ofstream(dir / "bad.csv") << "r,s,x\n1,0.5,0.5\n1,oops,1\n";
        const auto bad = drisk_run("estimate --in " + (dir / "bad.csv").string() + " --x 10");
        CHECK(bad.code == 2);
        CHECK(bad.err.find("line 3") != std::string::npos);
        fs::remove_all(dir);
    }

    TEST_CASE("aggregate")
    {
        const auto plain = drisk_run("approx --r gamma:alpha=2,lambda=1 --s beta:a=2,b=2 --x 25,50");
        const auto agg = drisk_run("aggregate --r gamma:alpha=2,lambda=1 --s beta:a=2,b=2 --x 25,50 --lambda 1 --signs 1,0.5");
        REQUIRE(plain.code == 0);
        REQUIRE(agg.code == 0);
        CHECK(data_lines(plain.out) == data_lines(agg.out));

        const auto mc = drisk_run("aggregate --s beta:a=2,b=2 --x 1e-4 --lambda 0.6 --mc 10000000");
        REQUIRE(mc.code == 0);
        const auto t = parse_csv(mc.out);
        REQUIRE(t.rows.size() == 1);
        const auto& row = t.rows[0];
        CHECK(std::abs(row[t.col("mc_estimate")] - row[t.col("leading")]) <= 3.0 * row[t.col("mc_std_error")]);

        CHECK(drisk_run("aggregate --s beta:a=2,b=2 --x 1e-4 --lambda 1.5").code == 2);
    }

    TEST_CASE("config round trip")
    {
        for (const std::string text :
             {"approx --r pareto:alpha=2,theta=1 --s beta:a=1,b=2 --x 10,100",
              "compare --r gamma:alpha=2,lambda=1 --s beta:a=2,b=2 --x 10:100:5:log --format json",
              "estimate --r pareto:alpha=2,theta=1 --s beta:a=1,b=2 --p 0.0001 --k 100:200 --n 500 --seed 9 --method heavy_X",
              "aggregate --s beta:a=2,b=2 --x 0.001 --seed 1 --lambda 0.6 --signs 0.5,0.5 --mc 1000"}) {
            CAPTURE(text);
            const auto c = cli::parse_run_config(text);
            const auto s = c.serialize();
            CHECK(cli::parse_run_config(s).serialize() == s);
        }
        // normalization
        const auto c = cli::parse_run_config("approx --x 10 --s Beta:b=2,a=1 --r Pareto:theta=1,alpha=2");
        CHECK(c.serialize() == "approx --r pareto:alpha=2,theta=1 --s beta:a=1,b=2 --x 10 --format csv");
    }

    TEST_CASE("grid syntax")
    {
        const auto g = cli::Grid::parse("1:100:3:log");
        REQUIRE(g.values.size() == 3);
        CHECK(g.values[1] == doctest::Approx(10.0).epsilon(1e-14));
        CHECK(g.values[2] == 100.0);
        CHECK(cli::Grid::parse("0:1:5").values[1] == 0.25);
        CHECK(cli::Grid::parse("3,1,2").values == std::vector<double>{3, 1, 2});
        CHECK_THROWS(cli::Grid::parse("1:10:0"));
        CHECK_THROWS(cli::Grid::parse("a,b"));
    }

    TEST_CASE("json output")
    {
        const auto r = drisk_run("approx --r pareto:alpha=2,theta=1 --s beta:a=1,b=2 --x 100 --format json");
        REQUIRE(r.code == 0);
        CHECK(r.out.find("\"tool\": \"drisk\"") != std::string::npos);
        CHECK(r.out.find("\"version\": \"1.0.0\"") != std::string::npos);
    }

    TEST_CASE("installed binary")
    {
        const auto dir = scratch_dir();
        const auto out = dir / "bin.csv";
        const std::string cmd = std::string(DRISK_TOOL_PATH) +
                                " approx --r pareto:alpha=2,theta=1 --s beta:a=1,b=2 --x 10,100 --out " + out.string();
        REQUIRE(std::system(cmd.c_str()) == 0);
        CHECK(slurp(out) == drisk_run("approx --r pareto:alpha=2,theta=1 --s beta:a=1,b=2 --x 10,100").out);
        const std::string bad = std::string(DRISK_TOOL_PATH) + " approx --r nosuch --s beta:a=1,b=2 --x 1 2>/dev/null";
        const int status = std::system(bad.c_str());
        CHECK(WEXITSTATUS(status) == 2);
        fs::remove_all(dir);
    }
}
