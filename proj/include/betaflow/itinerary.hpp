#pragma once

#include "betaflow/scalar.hpp"
#include "betaflow/words.hpp"

#include <optional>

namespace betaflow {

enum class Variant { Upper, Lower };

// Parameter pair (beta, alpha) with 1 < beta < 2 and 0 <= alpha <= 2-beta,
// plus the cached critical point p = (1-alpha)/beta.
struct Params {
    Scalar beta;
    Scalar alpha;
    Scalar p;

    Params(Scalar beta_, Scalar alpha_);
    bool exact() const { return beta.is_exact() && alpha.is_exact(); }
    // The reflected parameter pair (beta, 2-beta-alpha).
    Params reflected() const { return Params(beta, Scalar(2) - beta - alpha); }
};

Scalar critical_point(const Params& params);

// One application of T(x) = beta*x + alpha - digit, the branch chosen by
// comparing x against p (ties: Upper takes the 1-branch, Lower the 0-branch).
Scalar apply_map(const Params& params, const Scalar& x, Variant variant);

// The digit the map emits at x before applying the branch.
uint8_t branch_letter(const Params& params, const Scalar& x, Variant variant);

struct Orbit {
    Scalar start;
    Variant variant = Variant::Upper;
    std::vector<Scalar> points;  // points[0] = start
    FiniteWord letters;          // letters[k] = digit emitted at points[k]
    // (entry index, cycle length) when an exact revisit was certified.
    std::optional<std::pair<size_t, size_t>> cycle;
};

Orbit compute_orbit(const Params& params, const Scalar& x, Variant variant, size_t max_steps);

struct Expansion {
    std::optional<EPWord> word;  // set when the orbit revisit is certified
    FiniteWord prefix;           // letters actually computed
    // Heuristic (preperiod, period) guess for uncertified prefixes.
    std::optional<std::pair<size_t, size_t>> probable_period;

    const EPWord& certified() const {
        if (!word) throw Error(ErrorCode::NoPeriodWithinBudget, "expansion not certified within budget");
        return *word;
    }
};

// tau^+/tau^- expansion of x.  With exact scalars an orbit revisit makes
// the result a certified EPWord; otherwise the prefix is returned.
Expansion expansion(const Params& params, const Scalar& x, Variant variant, size_t max_steps = 4096);

// pi_{beta,alpha}(w) = alpha/(1-beta) + sum w_k beta^-k, in closed form.
Scalar project_pi(const Params& params, const EPWord& w);
// Projection of a finite word followed by 0^inf.
Scalar project_pi_prefix(const Params& params, const FiniteWord& w);

}  // namespace betaflow
