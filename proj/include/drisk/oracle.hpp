#pragma once

#include "drisk/distributions.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace drisk {

// H(x) = P(R S > x) by quadrature over the deflator. Results are cached per
// (model pair, x) for the lifetime of the process.
double exact_tail(const TailModel& R, const TailModel& S, double x);

// x with exact_tail(x) = u, for u in (0,1). Working with u = 1 - p keeps
// full relative accuracy for extreme levels.
double exact_upper_quantile(const TailModel& R, const TailModel& S, double u);
double exact_quantile(const TailModel& R, const TailModel& S, double p);

// Auxiliary functions (a_breve, A_breve) of U_X at level t, with U_X(t)
// located by root finding on the oracle tail.
struct ProductAux {
    double x, a_breve, A_breve;
};
ProductAux product_aux(const TailModel& R, const TailModel& S, double t);

struct SampleSet {
    std::uint64_t seed = 0;
    std::string model_r, model_s; // normalized specs, empty when unknown
    std::vector<double> r, s, x;
    std::vector<double> r_sorted, s_sorted, x_sorted; // ascending

    std::size_t n() const { return r.size(); }
    void sort_all();
};

enum class Which { R, S, X };

SampleSet draw_samples(const TailModel& R, const TailModel& S, std::size_t n, std::uint64_t seed);
double empirical_tail(const SampleSet& samples, Which which, double x);

void write_samples_csv(std::ostream& os, const SampleSet& samples);
// Throws ParseError with the offending line number.
SampleSet read_samples_csv(std::istream& is);

} // namespace drisk
