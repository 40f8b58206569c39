#pragma once

#include "betaflow/kneading.hpp"

namespace betaflow {

// The greedy system with a hole at zero conjugate to a given intermediate
// system: beta' = u(beta, alpha), hole parameter t = pi_{beta',0}(tau^+(0)).
struct GreedyHoleSystem {
    AlgebraicReal beta_prime;
    Scalar hole_t;
    EPWord hole_word;  // tau^+_{beta,alpha}(0)
    Params source;
};

// u(beta, alpha): the greedy base sharing tau^-(1) with the source.
AlgebraicReal greedy_base(const Params& params, size_t max_steps = 4096);

GreedyHoleSystem to_hole_system(const Params& params, size_t max_steps = 4096);

// pi-tilde = pi_{beta',0} o tau^+_{beta,alpha}; exact when the expansion of
// x certifies, otherwise evaluated on a prefix with the geometric tail
// added to the enclosure.
Scalar conjugacy_image(const Params& params, const Scalar& x, size_t max_steps = 4096);
// The lower-expansion variant pi-tilde^-.
Scalar conjugacy_image_lower(const Params& params, const Scalar& x, size_t max_steps = 4096);

// rho = inf over shifts of pi_{beta,0}(sigma^n(tau^-_{beta,0}(1))).
Scalar rho_inf(const AlgebraicReal& beta, size_t max_steps = 4096);

// Membership in the set B of hole words below rho with positive survivor
// entropy.
bool membership_B(const AlgebraicReal& beta, const EPWord& xi, size_t max_steps = 4096);

struct MembershipA {
    bool yes = false;
    PairCondition failed = PairCondition::Cond1;  // when !yes
};
// Membership in A: the candidate pair (0 tau^-(1), 1 xi) must be a valid
// kneading pair.
MembershipA membership_A(const AlgebraicReal& beta, const EPWord& xi, size_t max_steps = 4096);

// One step of the finite-type approximation from below.
struct SftApproximant {
    Params params;
    KneadingPair pair;
    size_t agreement_lower = 0;  // letters of prefix agreement with the source pair
    size_t agreement_upper = 0;
    double hausdorff_bound = 1;  // 2^(1-min agreement)
};

// A sequence of finite-type parameter pairs symbolically contained in the
// source shift, with kneading words agreeing on growing prefixes.  The
// agreement ladder defaults to 10, 15, 20, ...
std::vector<SftApproximant> sft_approx_sequence(const Params& params, size_t count,
                                                std::vector<size_t> agreement_ladder = {});

// Containment check Omega(candidate) inside Omega(source): candidate
// kneading words within the source windows (lower below, upper above).
bool symbolically_contained(const KneadingPair& candidate, const KneadingPair& source);

}  // namespace betaflow
