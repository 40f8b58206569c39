#pragma once

#include "betaflow/correspondence.hpp"

namespace betaflow {

// Hole description: the parameter t, its upper expansion, and the status
// of the orbit condition T^n(t) not entering [0, t).
struct HoleSpec {
    Params params;
    Scalar t;
    std::optional<EPWord> t_word;  // certified tau^+(t)
    FiniteWord t_prefix;
    TriState in_E_plus = TriState::Unknown;
    size_t escape_step = 0;  // set when in_E_plus == No
    size_t depth = 0;
};

HoleSpec make_hole(const Params& params, const Scalar& t, size_t depth = 4096);

// The orbit test for membership of t in the bifurcation set, certified by
// an exact revisit (Yes), a strict escape (No + step), or left Unknown at
// the given depth.
HoleSpec in_bifurcation_set(const Params& params, const Scalar& t, size_t depth = 4096);

// w belongs to the symbolic survivor set of the hole: every shift lies in
// [tau^+(t), tau^-(1)).
bool survivor_member(const Params& params, const HoleSpec& hole, const EPWord& w);

// Number of length-n prefixes of symbolic survivor words, via the window
// automaton.
Int count_survivor_words(const Params& params, const HoleSpec& hole, size_t n);

// The plateau representative t* = inf{ s in E+ : s >= t }, found by
// hopping across Lyndon gaps.
struct PlateauPoint {
    Scalar value;
    EPWord word;   // tau^+(t*), shift-minimal
    size_t jumps;  // Lyndon intervals crossed
};
std::optional<PlateauPoint> bifurcation_successor(const Params& params, const Scalar& t,
                                                  size_t lyndon_bound = 24, size_t max_jumps = 64);

// Critical hole: closed form (1-alpha-beta*alpha)/beta^2 on the family
// with tau^-(1) = (10)^inf, otherwise located by bisection on the
// survivor entropy.
Scalar critical_hole(const Params& params);

struct EtaResult {
    bool kneading_ok = false;
    double eta_kneading = 0;  // method A: log(beta'')/log(beta)
    bool counting_ok = false;
    double eta_counting = 0;  // method B: automaton counting at depth
    std::string plateau;      // tau^+(t*) when found
    std::string beta2_poly;   // defining polynomial of beta'' (method A)
    double alpha2 = 0;
    std::string note;
};

EtaResult eta_full(const Params& params, const Scalar& t, size_t depth = 30, size_t lyndon_bound = 24);
// Method A value as a scalar; errors are propagated.
Scalar eta(const Params& params, const Scalar& t);

struct SweepRow {
    double t = 0;
    EtaResult result;
};

// Uniform sweep of [0, t_max] with the given number of samples; rows are
// computed independently (in parallel when threads != 1).
std::vector<SweepRow> dimension_sweep(const Params& params, size_t samples, size_t depth,
                                      const Rational& t_max = Rational(9, 10), size_t threads = 0);

std::string sweep_to_csv(const std::vector<SweepRow>& rows);

}  // namespace betaflow
