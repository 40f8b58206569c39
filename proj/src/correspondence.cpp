#include "betaflow/correspondence.hpp"

#include "betaflow/word_automaton.hpp"

namespace betaflow {

AlgebraicReal greedy_base(const Params& params, size_t max_steps) {
    EPWord tau1 = expansion(params, Scalar(1), Variant::Lower, max_steps).certified();
    return solve_parry_beta(tau1);
}

GreedyHoleSystem to_hole_system(const Params& params, size_t max_steps) {
    AlgebraicReal bp = greedy_base(params, max_steps);
    EPWord hole_word = expansion(params, Scalar(0), Variant::Upper, max_steps).certified();
    Params greedy(Scalar::algebraic(bp), Scalar(0));
    Scalar hole_t = project_pi(greedy, hole_word);
    return GreedyHoleSystem{bp, hole_t, hole_word, params};
}

namespace {

Scalar conjugacy_image_variant(const Params& params, const Scalar& x, Variant v, size_t max_steps) {
    AlgebraicReal bp = greedy_base(params, max_steps);
    Params greedy(Scalar::algebraic(bp), Scalar(0));
    Expansion e = expansion(params, x, v, max_steps);
    if (e.word) return project_pi(greedy, *e.word);
    // Prefix projection plus the geometric tail enclosure.
    Scalar head = project_pi_prefix(greedy, e.prefix);
    unsigned prec = x.is_float() ? x.float_value()->precision() : DyadicInterval::default_precision();
    auto head_iv = head.enclose(prec + 2);
    Rational bplo = bp.refined(Rational(1, 1 << 20)).lo();
    Rational tail = 1;
    for (size_t i = 0; i < e.prefix.size(); ++i) tail /= bplo;
    tail /= (bplo - 1);
    return Scalar(DyadicInterval(head_iv.first, head_iv.second + tail, prec));
}

}  // namespace

Scalar conjugacy_image(const Params& params, const Scalar& x, size_t max_steps) {
    return conjugacy_image_variant(params, x, Variant::Upper, max_steps);
}

Scalar conjugacy_image_lower(const Params& params, const Scalar& x, size_t max_steps) {
    return conjugacy_image_variant(params, x, Variant::Lower, max_steps);
}

Scalar rho_inf(const AlgebraicReal& beta, size_t max_steps) {
    Params greedy(Scalar::algebraic(beta), Scalar(0));
    EPWord w = expansion(greedy, Scalar(1), Variant::Lower, max_steps).certified();
    Scalar best = project_pi(greedy, w);
    for (size_t n = 1; n < w.distinct_shifts(); ++n) {
        Scalar v = project_pi(greedy, shift(w, n));
        if (v < best) best = v;
    }
    return best;
}

bool membership_B(const AlgebraicReal& beta, const EPWord& xi, size_t max_steps) {
    Params greedy(Scalar::algebraic(beta), Scalar(0));
    EPWord tau1 = expansion(greedy, Scalar(1), Variant::Lower, max_steps).certified();
    for (size_t n = 0; n < xi.distinct_shifts(); ++n) {
        EPWord s = shift(xi, n);
        if (!(lex_le(xi, s) && lex_lt(s, tau1))) return false;
    }
    if (!(project_pi(greedy, xi) <= rho_inf(beta, max_steps))) return false;
    WordAutomaton aut(WordAutomaton::uniform(xi, tau1));
    return aut.positive_entropy();
}

MembershipA membership_A(const AlgebraicReal& beta, const EPWord& xi, size_t max_steps) {
    Params greedy(Scalar::algebraic(beta), Scalar(0));
    EPWord tau1 = expansion(greedy, Scalar(1), Variant::Lower, max_steps).certified();
    PairValidity v = validate_kneading_pair(prepend(0, tau1), prepend(1, xi));
    return MembershipA{v.valid, v.failed};
}

bool symbolically_contained(const KneadingPair& candidate, const KneadingPair& source) {
    if (!(lex_le(candidate.lower, source.lower) && lex_le(source.upper, candidate.upper))) return false;
    // Certify through the structure-theorem inequalities as well: the
    // candidate's kneading words lie in the source shift space.
    OmegaBounds b = bounds_of(source);
    return in_omega_minus(candidate.lower, b) && in_omega_plus(candidate.upper, b);
}

namespace {

size_t agreement_length(const EPWord& a, const EPWord& b, size_t cap = 1 << 16) {
    size_t n = 0;
    while (n < cap && a.letter(n) == b.letter(n)) ++n;
    return n;
}

}  // namespace

std::vector<SftApproximant> sft_approx_sequence(const Params& params, size_t count,
                                                std::vector<size_t> ladder) {
    KneadingPair source = kneading_invariants(params);
    std::vector<SftApproximant> out;
    if (source.lower.purely_periodic() && source.upper.purely_periodic()) {
        // Already finite type: the sequence is the system itself.
        for (size_t i = 0; i < count; ++i)
            out.push_back(SftApproximant{params, source, size_t(1) << 20, size_t(1) << 20, 0.0});
        return out;
    }
    while (ladder.size() < count) ladder.push_back(ladder.empty() ? 10 : ladder.back() + 5);

    const size_t slack = 14;
    for (size_t k = 0; k < count; ++k) {
        const size_t m = ladder[k];
        std::optional<SftApproximant> found;
        // Candidate periodizations of the source prefixes.  The lower word
        // must drop below the source after agreeing (periodize at a
        // 1-letter), the upper must rise above it (periodize at a 0-letter);
        // a purely periodic source word is kept as is.
        std::vector<std::pair<EPWord, size_t>> lows, highs;
        if (source.lower.purely_periodic()) {
            lows.emplace_back(source.lower, size_t(1) << 20);
        } else {
            for (size_t L = m; L <= m + slack; ++L)
                if (source.lower.letter(L) == 1) {
                    EPWord w = EPWord::periodic(source.lower.prefix(L));
                    lows.emplace_back(w, agreement_length(w, source.lower));
                }
        }
        if (source.upper.purely_periodic()) {
            highs.emplace_back(source.upper, size_t(1) << 20);
        } else {
            for (size_t L = m; L <= m + slack; ++L)
                if (source.upper.letter(L) == 0) {
                    EPWord w = EPWord::periodic(source.upper.prefix(L));
                    highs.emplace_back(w, agreement_length(w, source.upper));
                }
        }
        for (const auto& [lw, lagree] : lows) {
            if (found) break;
            if (lagree < m) continue;
            for (const auto& [uw, uagree] : highs) {
                if (uagree < m) continue;
                KneadingPair cand{lw, uw};
                if (!symbolically_contained(cand, source)) continue;
                if (!validate_kneading_pair(lw, uw).valid) continue;
                try {
                    Params approx = system_from_kneading_pair(lw, uw);
                    size_t agree = std::min(lagree, uagree);
                    double haus = std::pow(2.0, 1.0 - static_cast<double>(std::min(agree, size_t(60))));
                    found = SftApproximant{approx, cand, lagree, uagree, haus};
                    break;
                } catch (const Error&) {
                    continue;
                }
            }
        }
        if (!found)
            throw Error(ErrorCode::SearchExhausted,
                        "no finite-type approximant at agreement " + std::to_string(m));
        out.push_back(*found);
    }
    return out;
}

}  // namespace betaflow
