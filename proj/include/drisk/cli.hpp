#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace drisk::cli {

inline constexpr const char* kVersion = "1.0.0";

// Evaluation grid given as a list ("10,100") or a range "lo:hi:n" with an
// optional ":log" suffix for geometric spacing.
struct Grid {
    std::vector<double> values;
    struct Range {
        double lo = 0.0, hi = 0.0;
        std::size_t n = 0;
        bool log = false;
    };
    std::optional<Range> range;
    bool given = false;

    static Grid parse(const std::string& text);
    std::string to_text() const;
};

struct RunConfig {
    std::string command;
    std::string risk, deflator; // normalized model specs, empty when absent
    Grid x, p;
    std::optional<std::pair<std::size_t, std::size_t>> k;
    std::optional<std::size_t> n;
    std::uint64_t seed = 1;
    std::string method; // canonical name, empty when absent
    std::optional<double> lambda;
    std::vector<double> signs; // P(I1=1),P(I2=1) or pp,pm,mp,mm
    std::optional<std::uint64_t> mc;
    bool exact = false;
    std::string in;
    std::string format = "csv";
    // Output locations do not enter the normalized text.
    std::string out, summary;

    // Canonical command line; parse_run_config(serialize()) reproduces it.
    std::string serialize() const;
};

// Parses a command line without the program name. Throws CLI11 errors for
// malformed flags and drisk errors for malformed values.
RunConfig parse_run_config(const std::vector<std::string>& args);
RunConfig parse_run_config(const std::string& text);

// Runs one command. Returns 0 on success, 1 on numeric failure and 2 on
// usage or domain errors; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace drisk::cli
