#include <doctest.h>

#include "betaflow/kneading.hpp"
#include "test_util.hpp"

#include <random>

using namespace betaflow;
using namespace betaflow::testutil;

TEST_CASE("kneading invariants of the worked examples") {
    KneadingPair q = kneading_invariants(quartic_pair());
    CHECK(q.lower == EPWord::parse("0(10)"));
    CHECK(q.upper == EPWord::parse("1(0001)"));

    KneadingPair g = kneading_invariants(golden_greedy());
    CHECK(g.lower == EPWord::parse("0(10)"));
    CHECK(g.upper == EPWord::parse("1(0)"));

    KneadingPair f = kneading_invariants(quintic_greedy());
    CHECK(f.lower == prepend(0, EPWord::parse("11(100)")));
    CHECK(f.upper == EPWord::parse("1(0)"));
}

TEST_CASE("kneading pair window ordering") {
    for (const Params& params : {golden_greedy(), quartic_pair(), quintic_greedy()}) {
        KneadingPair k = kneading_invariants(params);
        CHECK(k.lower.letter(0) == 0);
        CHECK(k.upper.letter(0) == 1);
        CHECK(lex_le(shift(k.upper, 1), k.lower));
        CHECK(lex_lt(k.lower, k.upper));
        CHECK(lex_le(k.upper, shift(k.lower, 1)));
    }
}

TEST_CASE("omega membership") {
    CHECK(in_omega_plus(EPWord::constant(0), golden_greedy()));
    CHECK(in_omega_plus(EPWord::parse("(0001)"), quartic_pair()));
    // (11)^inf bursts the upper window of the golden system at shift 0.
    CHECK(lex_lt(EPWord::parse("(10)"), EPWord::parse("(11)")));
    CHECK_FALSE(in_omega_plus(EPWord::parse("(11)"), golden_greedy()));
    // The kneading words belong to their own shift space.
    for (const Params& params : {golden_greedy(), quartic_pair(), quintic_greedy()}) {
        KneadingPair k = kneading_invariants(params);
        OmegaBounds b = bounds_of(k);
        CHECK(in_omega_plus(k.upper, b));
        CHECK(in_omega_minus(k.lower, b));
    }
}

TEST_CASE("validate_kneading_pair") {
    CHECK(validate_kneading_pair(EPWord::parse("0(10)"), EPWord::parse("1(0001)")).valid);

    // Swapped leading letters.
    PairValidity v1 = validate_kneading_pair(EPWord::parse("1(0001)"), EPWord::parse("0(10)"));
    CHECK_FALSE(v1.valid);
    CHECK(v1.failed == PairCondition::Cond1);

    // The two-block degeneracy from the quintic counterexample:
    // omega = 011(100)^inf and nu = 100(011)^inf decompose over {011, 100}.
    PairValidity v4 = validate_kneading_pair(prepend(0, EPWord::parse("11(100)")),
                                             prepend(1, EPWord::parse("00(011)")));
    CHECK_FALSE(v4.valid);
    CHECK(v4.failed == PairCondition::Cond4);
}

TEST_CASE("is_sft") {
    CHECK(is_sft(quartic_pair()));
    CHECK_FALSE(is_sft(quintic_greedy()));
    CHECK_FALSE(is_sft(golden_greedy()));
    CHECK(sft_status(Params(Scalar(Rational(3, 2)), Scalar(Rational(1, 8))), 64) == TriState::Unknown);
}

TEST_CASE("solve_parry_beta") {
    AlgebraicReal g = solve_parry_beta(EPWord::parse("(10)"));
    CHECK(g.defining_poly() == golden_poly());
    AlgebraicReal g12 = g.refined(Rational(1, Int(1) << 42));
    CHECK(g12.width() < Rational(1, 1000000000000LL));

    AlgebraicReal q = solve_parry_beta(EPWord::parse("11(100)"));
    CHECK(q.defining_poly() == quintic_poly());

    // 1 = z^-1 + z^-5 + z^-9 + ... clears to z^4 - z^3 - 1.
    AlgebraicReal r = solve_parry_beta(EPWord::parse("(1000)"));
    CHECK(r.defining_poly() == ipoly({-1, 0, 0, -1, 1}));
    // Bisection oracle pins the value.
    Poly p = ipoly({-1, 0, 0, -1, 1});
    Rational lo = 1, hi = 2;
    for (int i = 0; i < 40; ++i) {
        Rational mid = (lo + hi) / 2;
        if (p.sign_at(mid) == p.sign_at(lo)) lo = mid; else hi = mid;
    }
    CHECK(rat_abs(r.refined(pow2neg(40)).midpoint() - (lo + hi) / 2) < pow2neg(36));

    CHECK_THROWS_AS(solve_parry_beta(EPWord::parse("(01)")), Error);  // shift exceeds word
    CHECK_THROWS_AS(solve_parry_beta(EPWord::parse("1(0)")), Error);   // tail 0^inf
}

TEST_CASE("system_from_kneading_pair reproduces the quartic example") {
    Params params = system_from_kneading_pair(EPWord::parse("0(10)"), EPWord::parse("1(0001)"));
    const NFElem* be = params.beta.field_elem();
    REQUIRE(be != nullptr);
    // The defining polynomial divides x^4 - x^2 - x - 1.
    Poly rem = quartic_poly().divmod(be->field->modulus()).second;
    CHECK(rem.is_zero());
    CHECK(std::abs(params.beta.to_double() - 1.4656) < 5e-4);
    CHECK(std::abs(params.alpha.to_double() - 0.1288) < 5e-4);
    // Exact identity alpha = 1 - beta^2/(beta+1).
    CHECK(params.alpha == Scalar(1) - params.beta * params.beta / (params.beta + Scalar(1)));

    Params golden = system_from_kneading_pair(EPWord::parse("0(10)"), EPWord::parse("1(0)"));
    CHECK(golden.beta == Scalar::algebraic(max_real_root_in(golden_poly(), 1, 2)));
    CHECK(golden.alpha == Scalar(0));
}

TEST_CASE("round trip on enumerated SFT pairs") {
    auto pairs = enumerate_periodic_pairs(5, 5, 12);
    CHECK(pairs.size() >= 6);
    for (const auto& pair : pairs) {
        Params params = system_from_kneading_pair(pair.lower, pair.upper);
        KneadingPair back = kneading_invariants(params);
        CHECK(back.lower == pair.lower);
        CHECK(back.upper == pair.upper);
        CHECK(is_sft(params));
    }
}

TEST_CASE("condition-4 search bound cross-check") {
    // The bounded block search must agree with a deeper search on small
    // pairs (both valid and the constructed violation).
    auto deep_search = [](const EPWord& lower, const EPWord& upper, size_t bound) {
        if (!(lower.letter(1) == 1 && upper.letter(1) == 0)) return false;
        for (size_t lx = 3; lx <= bound; ++lx)
            for (size_t lz = 3; lz <= bound; ++lz) {
                FiniteWord x = lower.prefix(lx), z = upper.prefix(lz);
                EPWord xw = EPWord::periodic(x), zw = EPWord::periodic(z);
                EPWord s_zw = shift(zw, 1), s_xw = shift(xw, 1);
                auto window_ok = [&](const EPWord& w, bool low_strict, bool high_strict) {
                    for (size_t n = 0; n < w.distinct_shifts(); ++n) {
                        EPWord s = shift(w, n);
                        const EPWord& low = s.letter(0) == 0 ? s_zw : zw;
                        const EPWord& high = s.letter(0) == 0 ? xw : s_xw;
                        bool above = low_strict ? lex_lt(low, s) : lex_le(low, s);
                        bool below = high_strict ? lex_lt(s, high) : lex_le(s, high);
                        if (!(above && below)) return false;
                    }
                    return true;
                };
                // Decompose by greedy scan over a long unrolled prefix.
                auto decomposes = [&](const EPWord& w) {
                    size_t len = 4 * (w.preperiod().size() + w.period().size()) + 4 * bound + 12;
                    // breadth-first over reachable cut positions
                    std::vector<size_t> stack{0};
                    std::vector<bool> seen(len + 1, false);
                    seen[0] = true;
                    bool deep = false;
                    while (!stack.empty()) {
                        size_t pos = stack.back();
                        stack.pop_back();
                        if (pos + std::max(x.size(), z.size()) > len) { deep = true; continue; }
                        for (const FiniteWord* blk : {&x, &z}) {
                            bool m = true;
                            for (size_t i = 0; i < blk->size() && m; ++i) m = (w.letter(pos + i) == (*blk)[i]);
                            if (m && !seen[pos + blk->size()]) {
                                seen[pos + blk->size()] = true;
                                stack.push_back(pos + blk->size());
                            }
                        }
                    }
                    return deep;  // a cut survived past the unrolled window
                };
                if (!(decomposes(lower) && decomposes(upper))) continue;
                if (!window_ok(xw, true, false)) continue;
                if (!window_ok(zw, false, true)) continue;
                if (!(lower == xw && upper == zw)) return true;  // violation
            }
        return false;
    };

    std::vector<std::pair<EPWord, EPWord>> cases = {
        {EPWord::parse("0(10)"), EPWord::parse("1(0001)")},
        {prepend(0, EPWord::parse("11(100)")), prepend(1, EPWord::parse("00(011)"))},
        {EPWord::parse("(011)"), EPWord::parse("(100)")},
        {EPWord::parse("(01)"), EPWord::parse("(1100)")},
    };
    for (const auto& [lo, up] : cases) {
        size_t b = lo.preperiod().size() + lo.period().size() + up.preperiod().size() + up.period().size();
        PairValidity v = validate_kneading_pair(lo, up);
        bool bounded_hit = !v.valid && v.failed == PairCondition::Cond4;
        bool deep_hit = deep_search(lo, up, b + 6);
        if (v.valid || v.failed == PairCondition::Cond4) CHECK(bounded_hit == deep_hit);
    }
}

TEST_CASE("search_alpha") {
    AlgebraicReal qb = max_real_root_in(quartic_poly(), 1, 2);
    Scalar alpha = search_alpha(qb, EPWord::parse("1(0001)"), Variant::Upper, Rational(1, 1 << 20));
    Params expected = quartic_pair();
    CHECK(std::abs(alpha.to_double() - expected.alpha.to_double()) < 1e-4);

    // Target equal to the kneading word at alpha = 0 comes back ~0.
    Params qg(Scalar::algebraic(qb), Scalar(0));
    KneadingPair at0 = kneading_invariants(qg);
    Scalar a0 = search_alpha(qb, at0.upper, Variant::Upper, Rational(1, 1 << 16));
    CHECK(std::abs(a0.to_double()) < 1e-3);

    // Golden beta, lower target 0(10)^inf at 20 letters: alpha near the
    // closed-form 0 recovered by system_from_kneading_pair.
    AlgebraicReal gb = max_real_root_in(golden_poly(), 1, 2);
    Params gsys = system_from_kneading_pair(EPWord::parse("0(10)"), EPWord::parse("1(0)"));
    Scalar ag = search_alpha(gb, EPWord::parse("0(10)"), Variant::Lower, pow2neg(19));
    CHECK(std::abs(ag.to_double() - gsys.alpha.to_double()) < 1e-3);

    CHECK_THROWS_AS(search_alpha(gb, EPWord::parse("(11)"), Variant::Upper, Rational(1, 1024)), Error);
}

TEST_CASE("monotonicity of kneading invariants in alpha") {
    AlgebraicReal qb = max_real_root_in(quartic_poly(), 1, 2);
    Scalar b = Scalar::algebraic(qb);
    std::mt19937_64 rng(31);
    std::uniform_int_distribution<long> num(1, 1 << 20);
    for (int i = 0; i < 12; ++i) {
        Rational a1(num(rng), Int(1) << 22), a2(num(rng), Int(1) << 22);
        if (a1 == a2) continue;
        if (a1 > a2) std::swap(a1, a2);
        Params p1(b, Scalar(a1)), p2(b, Scalar(a2));
        auto e1 = expansion(p1, p1.p, Variant::Upper, 48), e2 = expansion(p2, p2.p, Variant::Upper, 48);
        FiniteWord w1 = e1.word ? e1.word->prefix(48) : e1.prefix;
        FiniteWord w2 = e2.word ? e2.word->prefix(48) : e2.prefix;
        CHECK(w1 <= w2);
    }
}

TEST_CASE("lower expansion is the left limit of upper expansions") {
    // tau^-(x) = lim_{y -> x from below} tau^+(y), sampled at x = 1.
    Params q = quartic_pair();
    EPWord tau_minus_1 = expansion(q, Scalar(1), Variant::Lower).certified();
    for (unsigned k : {8u, 16u, 24u}) {
        Scalar y = Scalar(1) - Scalar(pow2neg(k));
        auto e = expansion(q, y, Variant::Upper, 2 * k);
        size_t agree = 0;
        while (agree < e.prefix.size() && e.prefix[agree] == tau_minus_1.letter(agree)) ++agree;
        CHECK(agree >= k / 2);
    }
}
