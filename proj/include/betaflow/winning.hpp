#pragma once

#include "betaflow/sft.hpp"

namespace betaflow {

// Finite-depth certificates for the geometric condition behind the
// winning property on finite-type transitive systems.

// Least m with adjacency^m strictly positive.
size_t mixing_time(const SftSystem& s);
size_t mixing_time_of_matrix(const std::vector<std::vector<uint8_t>>& m);

// Cell word (symbolic representation w.r.t. the Markov partition) of a
// point, following the upper itinerary.
std::vector<size_t> cell_word_of_point(const SftSystem& s, const Scalar& x, size_t len);

struct RatioReport {
    bool pass = false;  // exact comparisons; the doubles below are for reporting
    size_t depth = 0;
    std::vector<double> sup_ratio;  // per-depth worst |I(u w|_i)| / |I(u)|
    std::vector<double> bound;      // beta^-i / rho
};

// Checks sup_u |I(u w|_i)|/|I(u)| <= beta^-i / rho for i <= depth, where u
// ranges over extendable cell words up to the same depth.
RatioReport check_ratio_condition(const SftSystem& s, const std::vector<size_t>& x_word, size_t depth);

struct DistanceReport {
    bool pass = false;
    size_t depth = 0;
    size_t pairs_checked = 0;
    size_t zero_distance_pairs = 0;
    double worst_ratio = 0;  // worst dist(I(vw),I(ew)) / dist(I(v),I(e))
    bool worst_set = false;
    double c_bound = 0;  // rho * beta^-(m+1)
};

// Enumerates gamma/4-comparable x_word-extendable pairs to the given depth
// and verifies dist(I(v w|_i), I(e w|_i)) is zero or >= c dist(I(v), I(e))
// with c = rho beta^-(m+1).
DistanceReport check_distance_condition(const SftSystem& s, const std::vector<size_t>& x_word,
                                        const Rational& gamma, size_t depth);

struct WinningCertificate {
    bool transitive = false;
    size_t mixing_time_m = 0;
    size_t k0 = 0;      // comparability window from the cylinder bounds
    size_t big_m = 0;   // self-agreement horizon of the symbolic word
    size_t i_star = 0;  // k0 + m + M
    double c = 0;       // rho beta^-(m+1)
    RatioReport ratio;
    DistanceReport distance;
    bool pass = false;
};

struct WinningReport {
    bool composed = false;      // non-transitive: certificates per orbit piece
    size_t cycle_period = 1;
    std::vector<WinningCertificate> pieces;  // single entry when transitive
    bool pass = false;
};

// Certificate for the full system at xi when transitive; otherwise the
// composed report over the power system along the orbit of xi.
WinningReport winning_report(const Params& params, const Scalar& xi, const Rational& gamma, size_t depth);

}  // namespace betaflow
