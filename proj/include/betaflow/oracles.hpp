#pragma once

#include "betaflow/sft.hpp"

#include <set>

namespace betaflow {

// Independent test oracles.  These deliberately share no traversal logic
// with the modules they check: languages come from exact interval
// subdivision, dimensions from box counting, escape rates from sampling.
namespace oracles {

struct EnumerationReport {
    size_t n = 0;
    std::set<std::string> words;
    enum class Method { IntervalSubdivision, OrbitSampling } method = Method::IntervalSubdivision;
    size_t count() const { return words.size(); }
};

// Exhaustive admissible n-prefixes of upper itineraries of [0, 1), by
// iterating exact interval images of the two branches.
EnumerationReport brute_force_language(const Params& params, size_t n);

// Same over the cells of a compiled Markov partition.
EnumerationReport brute_force_cell_language(const SftSystem& s, size_t n);

// Exhaustive count of length-n prefixes of the symbolic survivor set
// {w : low <= sigma^k(w) < high for all k}, by subdivision constrained to
// the window.
Int brute_force_survivor_count(const Params& params, const EPWord& low, size_t n);

// log(number of surviving boxes)/log(grid): a statistical estimate of the
// dimension of the survivor set of [0, t).
double box_counting_dim(const Params& params, double t, size_t grid, size_t steps);

// Fraction of uniform samples whose orbit enters [0, t) within `steps`.
double escape_fraction(const Params& params, double t, size_t samples, size_t steps, uint64_t seed);

}  // namespace oracles

}  // namespace betaflow
