#include "betaflow/kneading.hpp"

#include "betaflow/word_automaton.hpp"

#include <algorithm>

namespace betaflow {

namespace {

bool lex_lt_ep(const EPWord& a, const EPWord& b) { return lex_compare(a, b) == Ordering::LT; }
bool lex_le_ep(const EPWord& a, const EPWord& b) { return lex_compare(a, b) != Ordering::GT; }

// Window membership with configurable strictness: checks every distinct
// shift s of w against (low0 R0 s R1 high0) or (low1 ...) by leading letter.
bool shifts_in_windows(const EPWord& w, const EPWord& low0, const EPWord& high0, const EPWord& low1,
                       const EPWord& high1, bool low_strict, bool high_strict) {
    const size_t shifts = w.distinct_shifts();
    for (size_t n = 0; n < shifts; ++n) {
        EPWord s = shift(w, n);
        const EPWord& low = s.letter(0) == 0 ? low0 : low1;
        const EPWord& high = s.letter(0) == 0 ? high0 : high1;
        bool above = low_strict ? lex_lt_ep(low, s) : lex_le_ep(low, s);
        bool below = high_strict ? lex_lt_ep(s, high) : lex_le_ep(s, high);
        if (!(above && below)) return false;
    }
    return true;
}

// Infinite decomposability of w into blocks from {x, z}: existence of an
// infinite block path from position 0, with positions folded onto the
// eventually periodic shape of w.
bool decomposes_into_blocks(const EPWord& w, const FiniteWord& x, const FiniteWord& z) {
    const size_t p = w.preperiod().size(), q = w.period().size();
    const size_t nodes = p + q;
    auto fold = [&](size_t pos) { return pos < p + q ? pos : p + (pos - p) % q; };
    auto matches = [&](size_t pos, const FiniteWord& blk) {
        for (size_t i = 0; i < blk.size(); ++i)
            if (w.letter(pos + i) != blk[i]) return false;
        return true;
    };
    std::vector<std::vector<size_t>> succ(nodes);
    for (size_t v = 0; v < nodes; ++v) {
        if (matches(v, x)) succ[v].push_back(fold(v + x.size()));
        if (matches(v, z)) succ[v].push_back(fold(v + z.size()));
    }
    // Greatest fixed point: keep nodes with an edge into the kept set.
    std::vector<bool> alive(nodes, true);
    bool changed = true;
    while (changed) {
        changed = false;
        for (size_t v = 0; v < nodes; ++v) {
            if (!alive[v]) continue;
            bool has = false;
            for (size_t u : succ[v]) has = has || alive[u];
            if (!has) {
                alive[v] = false;
                changed = true;
            }
        }
    }
    return alive[fold(0)];
}

}  // namespace

KneadingPair kneading_invariants(const Params& params, size_t max_steps) {
    Scalar p = params.p;
    EPWord lower = expansion(params, p, Variant::Lower, max_steps).certified();
    EPWord upper = expansion(params, p, Variant::Upper, max_steps).certified();
    return KneadingPair{lower, upper};
}

OmegaBounds bounds_of(const KneadingPair& pair) {
    return OmegaBounds{shift(pair.upper, 1), pair.lower, pair.upper, shift(pair.lower, 1)};
}

bool in_omega_plus(const EPWord& w, const OmegaBounds& b) {
    return shifts_in_windows(w, b.tau_plus_0, b.tau_minus_p, b.tau_plus_p, b.tau_minus_1, false, true);
}

bool in_omega_minus(const EPWord& w, const OmegaBounds& b) {
    return shifts_in_windows(w, b.tau_plus_0, b.tau_minus_p, b.tau_plus_p, b.tau_minus_1, true, false);
}

bool in_omega_plus(const EPWord& w, const Params& params) { return in_omega_plus(w, bounds_of(kneading_invariants(params))); }
bool in_omega_minus(const EPWord& w, const Params& params) { return in_omega_minus(w, bounds_of(kneading_invariants(params))); }

PairValidity validate_kneading_pair(const EPWord& lower, const EPWord& upper) {
    // Condition 1: leading letters.
    if (lower.letter(0) != 0 || upper.letter(0) != 1) return {false, PairCondition::Cond1};

    EPWord s_upper = shift(upper, 1), s_lower = shift(lower, 1);
    // The window ordering sigma(nu) <= omega <= nu <= sigma(omega) underpins
    // the membership conditions; a failure is a Condition 2 failure.
    if (!(lex_le_ep(s_upper, lower) && lex_le_ep(lower, upper) && lex_le_ep(upper, s_lower)))
        return {false, PairCondition::Cond2};

    // Condition 2: omega in Omega^-(omega,nu) and nu in Omega^+(omega,nu).
    if (!shifts_in_windows(lower, s_upper, lower, upper, s_lower, true, false))
        return {false, PairCondition::Cond2};
    if (!shifts_in_windows(upper, s_upper, lower, upper, s_lower, false, true))
        return {false, PairCondition::Cond2};

    // Condition 3: exponential growth of the word count.
    WordAutomaton aut(WordAutomaton::Windows{s_upper, lower, upper, s_lower});
    if (!aut.positive_entropy()) return {false, PairCondition::Cond3};

    // Condition 4: the two-block renormalization degeneracy.  Search block
    // pairs (x, z) up to the combined period/preperiod bound.
    const size_t bound = lower.preperiod().size() + lower.period().size() + upper.preperiod().size() +
                         upper.period().size();
    if (lower.letter(1) == 1 && upper.letter(1) == 0) {
        for (size_t lx = 3; lx <= bound; ++lx) {
            FiniteWord x = lower.prefix(lx);
            for (size_t lz = 3; lz <= bound; ++lz) {
                FiniteWord z = upper.prefix(lz);
                EPWord xw = EPWord::periodic(x), zw = EPWord::periodic(z);
                if (!(decomposes_into_blocks(lower, x, z) && decomposes_into_blocks(upper, x, z))) continue;
                EPWord s_zw = shift(zw, 1), s_xw = shift(xw, 1);
                if (!(lex_le_ep(s_zw, xw) && lex_le_ep(xw, zw) && lex_le_ep(zw, s_xw))) continue;
                if (!shifts_in_windows(xw, s_zw, xw, zw, s_xw, true, false)) continue;
                if (!shifts_in_windows(zw, s_zw, xw, zw, s_xw, false, true)) continue;
                // Hypotheses hold: the pair must be exactly (x^inf, z^inf).
                if (!(lower == xw && upper == zw)) return {false, PairCondition::Cond4};
            }
        }
    }
    return {true, PairCondition::Cond1};
}

TriState sft_status(const Params& params, size_t max_steps) {
    try {
        KneadingPair pair = kneading_invariants(params, max_steps);
        return (pair.lower.purely_periodic() && pair.upper.purely_periodic()) ? TriState::Yes : TriState::No;
    } catch (const Error& e) {
        if (e.code() == ErrorCode::NoPeriodWithinBudget) return TriState::Unknown;
        throw;
    }
}

bool is_sft(const Params& params, size_t max_steps) {
    TriState s = sft_status(params, max_steps);
    if (s == TriState::Unknown)
        throw Error(ErrorCode::NoPeriodWithinBudget, "kneading periods not certified within budget");
    return s == TriState::Yes;
}

namespace {

// z^P * (z^Q - 1) * sum w_k z^-k as a polynomial pair (numerator, with the
// denominator z^P (z^Q - 1) implicit).
Poly series_numerator(const EPWord& w) {
    const size_t P = w.preperiod().size(), Q = w.period().size();
    std::vector<Rational> a(P, Rational(0)), b(Q, Rational(0));
    for (size_t k = 1; k <= P; ++k) a[P - k] = w.preperiod()[k - 1];
    for (size_t j = 1; j <= Q; ++j) b[Q - j] = w.period()[j - 1];
    Poly A(std::move(a)), B(std::move(b));
    std::vector<Rational> zq(Q + 1, Rational(0));
    zq[0] = -1;
    zq[Q] = 1;
    return Poly(std::move(zq)) * A + B;
}

Poly series_denominator(const EPWord& w) {
    const size_t P = w.preperiod().size(), Q = w.period().size();
    std::vector<Rational> d(P + Q + 1, Rational(0));
    d[P] = -1;
    d[P + Q] = 1;
    return Poly(std::move(d));
}

// Evaluates sum w_k beta^-k exactly in the field of beta.
Scalar series_value(const EPWord& w, const Scalar& beta) {
    Params greedy(beta, Scalar(0));
    return project_pi(greedy, w);
}

}  // namespace

Poly parry_polynomial(const EPWord& w) {
    return (series_numerator(w) - series_denominator(w)).primitive_integer();
}

AlgebraicReal solve_parry_beta(const EPWord& w) {
    // Admissibility: sigma^m(w) <= w for all m, and no shift is 0^inf.
    bool has_one = false;
    for (size_t i = 0; i < w.period().size(); ++i) has_one = has_one || w.period()[i] == 1;
    if (!has_one) throw Error(ErrorCode::NotAdmissible, "word tail is 0^inf");
    for (size_t n = 1; n < w.distinct_shifts(); ++n)
        if (lex_compare(shift(w, n), w) == Ordering::GT)
            throw Error(ErrorCode::NotAdmissible, "shift exceeds the word");
    return max_real_root_in(parry_polynomial(w), 1, 2);
}

Params system_from_kneading_pair_unchecked(const EPWord& lower, const EPWord& upper) {
    Poly num = series_numerator(lower) * series_denominator(upper) -
               series_numerator(upper) * series_denominator(lower);
    if (num.is_zero()) throw Error(ErrorCode::NoRoot, "degenerate kneading pair");
    AlgebraicReal beta_root = max_real_root_in(num, 1, 2);
    Scalar beta = Scalar::algebraic(beta_root);
    Scalar S = series_value(upper, beta);
    Scalar alpha = (Scalar(1) - beta) * (Scalar(1) - beta * S);
    return Params(beta, alpha);
}

Params system_from_kneading_pair(const EPWord& lower, const EPWord& upper) {
    PairValidity v = validate_kneading_pair(lower, upper);
    if (!v.valid)
        throw Error(ErrorCode::NotAdmissible,
                    "kneading pair fails condition " + std::to_string(static_cast<int>(v.failed)));
    Params params = system_from_kneading_pair_unchecked(lower, upper);
    KneadingPair back = kneading_invariants(params);
    if (!(back.lower == lower && back.upper == upper))
        throw Error(ErrorCode::RoundtripMismatch, "recovered parameters do not reproduce the kneading pair");
    return params;
}

Scalar search_alpha(const AlgebraicReal& beta, const EPWord& target, Variant side, const Rational& tol) {
    if (tol <= 0) throw Error(ErrorCode::BadInput, "tolerance must be positive");
    size_t K = 4;
    while (pow2neg(static_cast<unsigned>(K - 1)) > tol) ++K;
    Scalar b = Scalar::algebraic(beta);
    Scalar lo(0), hi = Scalar(2) - b;
    FiniteWord want = target.prefix(K);

    auto prefix_at = [&](const Scalar& alpha) {
        Params params(b, alpha);
        auto e = expansion(params, params.p, side, K);
        if (e.word) return e.word->prefix(K);
        return e.prefix.subword(0, std::min(e.prefix.size(), K));
    };

    FiniteWord at_lo = prefix_at(lo), at_hi = prefix_at(hi);
    if (want < at_lo || want > at_hi)
        throw Error(ErrorCode::TargetOutOfRange, "target word is outside the alpha range at this beta");
    if (at_lo == want) return lo;
    if (at_hi == want) return hi;
    for (int iter = 0; iter < 512; ++iter) {
        Scalar mid = (lo + hi) / Scalar(2);
        FiniteWord got = prefix_at(mid);
        if (got == want) return mid;
        if (got < want) lo = mid; else hi = mid;
    }
    throw Error(ErrorCode::TargetOutOfRange, "bisection did not reach the target prefix");
}

}  // namespace betaflow
