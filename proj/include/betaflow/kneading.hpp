#pragma once

#include "betaflow/itinerary.hpp"

namespace betaflow {

// The pair (tau^-(p), tau^+(p)) determining the shift space.
struct KneadingPair {
    EPWord lower;  // omega = tau^-(p), first letter 0
    EPWord upper;  // nu = tau^+(p), first letter 1
};

KneadingPair kneading_invariants(const Params& params, size_t max_steps = 4096);

// The four boundary words of the shift-space characterization.
struct OmegaBounds {
    EPWord tau_plus_0;   // sigma(upper)
    EPWord tau_minus_p;  // lower
    EPWord tau_plus_p;   // upper
    EPWord tau_minus_1;  // sigma(lower)
};
OmegaBounds bounds_of(const KneadingPair& pair);

// Membership by checking every distinct shift against the windows.
bool in_omega_plus(const EPWord& w, const OmegaBounds& b);
bool in_omega_minus(const EPWord& w, const OmegaBounds& b);
bool in_omega_plus(const EPWord& w, const Params& params);
bool in_omega_minus(const EPWord& w, const Params& params);

enum class PairCondition { Cond1 = 1, Cond2 = 2, Cond3 = 3, Cond4 = 4 };

struct PairValidity {
    bool valid = false;
    PairCondition failed = PairCondition::Cond1;  // meaningful when !valid
};

// The four-condition admissibility test for a candidate kneading pair
// (leading letters; self-consistency of the windows; exponential word
// growth; exclusion of the two-block renormalization degeneracy).
PairValidity validate_kneading_pair(const EPWord& lower, const EPWord& upper);

enum class TriState { Yes, No, Unknown };

// Finite type <=> both kneading invariants purely periodic.
TriState sft_status(const Params& params, size_t max_steps = 4096);
bool is_sft(const Params& params, size_t max_steps = 4096);

// The unique beta in (1,2) whose greedy system has tau^-(1) = w, as the
// maximal real root of the cleared-denominator series polynomial.
AlgebraicReal solve_parry_beta(const EPWord& w);
// The cleared-denominator polynomial of sum w_k z^-k  -  1.
Poly parry_polynomial(const EPWord& w);

// Recovers (beta, alpha) from a valid kneading pair and certifies the
// round trip through kneading_invariants.
Params system_from_kneading_pair(const EPWord& lower, const EPWord& upper);
// Same, without the round-trip certification (used by searches that
// re-check containment separately).
Params system_from_kneading_pair_unchecked(const EPWord& lower, const EPWord& upper);

// Finds alpha for a fixed beta so that the chosen kneading invariant
// matches `target` on its first K letters, K chosen from tol via 2^(1-K).
Scalar search_alpha(const AlgebraicReal& beta, const EPWord& target, Variant side, const Rational& tol);

}  // namespace betaflow
