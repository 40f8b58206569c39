#include <doctest.h>

#include "betaflow/correspondence.hpp"
#include "test_util.hpp"

#include <random>

using namespace betaflow;
using namespace betaflow::testutil;

namespace {

// Golden-family member with tau^+(0) = (001)^inf: beta is the plastic
// root x^3 - x - 1, alpha = 1 - beta^2/(beta+1).
Params plastic_member() {
    Scalar b = Scalar::algebraic(max_real_root_in(ipoly({-1, -1, 0, 1}), 1, 2));
    return Params(b, Scalar(1) - b * b / (b + Scalar(1)));
}

}  // namespace

TEST_CASE("greedy base") {
    AlgebraicReal g = max_real_root_in(golden_poly(), 1, 2);
    CHECK(AlgebraicReal::equal(greedy_base(quartic_pair()), g));
    // Greedy parameters are their own base.
    CHECK(AlgebraicReal::equal(greedy_base(golden_greedy()), g));
    AlgebraicReal q5 = max_real_root_in(quintic_poly(), 1, 2);
    CHECK(AlgebraicReal::equal(greedy_base(quintic_greedy()), q5));
}

TEST_CASE("hole system of the quartic pair") {
    GreedyHoleSystem hs = to_hole_system(quartic_pair());
    CHECK(AlgebraicReal::equal(hs.beta_prime, max_real_root_in(golden_poly(), 1, 2)));
    CHECK(hs.hole_word == EPWord::parse("(0001)"));
    // hole_t = 1/(G^4 - 1) = 1/(3G + 1), via G^2 = G + 1.
    Scalar G = Scalar::algebraic(hs.beta_prime);
    CHECK(hs.hole_t == Scalar(1) / (Scalar(3) * G + Scalar(1)));
    CHECK(std::abs(hs.hole_t.to_double() - 0.17082) < 1e-5);

    // Greedy sources sit at hole 0.
    CHECK(to_hole_system(golden_greedy()).hole_t == Scalar(0));
    CHECK(to_hole_system(quintic_greedy()).hole_t == Scalar(0));
}

TEST_CASE("hole parameter shrinks with alpha inside the golden family") {
    GreedyHoleSystem plastic = to_hole_system(plastic_member());
    GreedyHoleSystem quartic = to_hole_system(quartic_pair());
    Scalar G = Scalar::algebraic(max_real_root_in(golden_poly(), 1, 2));
    CHECK(plastic.hole_word == EPWord::parse("(001)"));
    // pi_G((001)^inf) = 1/(G^3-1) = 1/(2G).
    CHECK(plastic.hole_t == Scalar(1) / (Scalar(2) * G));
    // alpha(quartic) < alpha(plastic), and the hole parameters follow.
    CHECK(quartic_pair().alpha < plastic_member().alpha);
    CHECK(quartic.hole_t < plastic.hole_t);
}

TEST_CASE("conjugacy images") {
    Params q = quartic_pair();
    GreedyHoleSystem hs = to_hole_system(q);
    CHECK(conjugacy_image(q, Scalar(0)) == hs.hole_t);

    // pi-tilde^- maps the critical hole to the greedy critical hole G^-2.
    Scalar t_c = (Scalar(1) - q.alpha - q.beta * q.alpha) / (q.beta * q.beta);
    Scalar G = Scalar::algebraic(max_real_root_in(golden_poly(), 1, 2));
    CHECK(conjugacy_image_lower(q, t_c) == Scalar(1) / (G * G));
}

TEST_CASE("equivariance of the conjugacy in float mode") {
    // Both systems in the float backend at 128 fractional bits.
    Params qe = quartic_pair();
    Params q(qe.beta.to_dyadic(128), qe.alpha.to_dyadic(128));
    AlgebraicReal bp = greedy_base(qe);
    Params greedy(Scalar::algebraic(bp).to_dyadic(128), Scalar(DyadicInterval(Rational(0), 128)));
    std::mt19937_64 rng(41);
    std::uniform_int_distribution<long> num(1, (1L << 30) - 1);
    int done = 0;
    for (int trial = 0; trial < 80 && done < 40; ++trial) {
        Rational x0(num(rng), 1L << 30);
        try {
            // One long expansion of x under the source; pi-tilde of the
            // n-th orbit point is the projected suffix.
            auto e = expansion(q, Scalar(DyadicInterval(x0, 128)), Variant::Upper, 170);
            Scalar img = project_pi_prefix(greedy, e.prefix);
            for (size_t n = 1; n <= 20; ++n) {
                img = apply_map(greedy, img, Variant::Upper);
                FiniteWord tail(std::vector<uint8_t>(e.prefix.letters().begin() + n, e.prefix.letters().end()));
                Scalar rhs = project_pi_prefix(greedy, tail);
                CHECK(std::abs(img.to_double() - rhs.to_double()) < 1e-9);
            }
            ++done;
        } catch (const Error& err) {
            if (err.code() != ErrorCode::UndecidableAtPrecision) throw;
        }
    }
    CHECK(done >= 40);
}

TEST_CASE("rho") {
    // Quintic: rho = pi((001)^inf).
    AlgebraicReal q5 = max_real_root_in(quintic_poly(), 1, 2);
    Params greedy5(Scalar::algebraic(q5), Scalar(0));
    CHECK(rho_inf(q5) == project_pi(greedy5, EPWord::parse("(001)")));

    // Golden: the minimum over the two shifts of (10)^inf, by series oracle.
    AlgebraicReal g = max_real_root_in(golden_poly(), 1, 2);
    Scalar rho = rho_inf(g);
    double gv = 1.6180339887498949;
    double s01 = 0, s10 = 0;
    for (int k = 1; k <= 80; ++k) {
        if (k % 2 == 0) s01 += std::pow(gv, -k);
        else s10 += std::pow(gv, -k);
    }
    CHECK(std::abs(rho.to_double() - std::min(s01, s10)) < 1e-12);
}

TEST_CASE("membership in A and B") {
    AlgebraicReal q5 = max_real_root_in(quintic_poly(), 1, 2);
    EPWord xi = EPWord::parse("00(011)");
    CHECK(membership_B(q5, xi));
    MembershipA a = membership_A(q5, xi);
    CHECK_FALSE(a.yes);
    CHECK(a.failed == PairCondition::Cond4);

    CHECK(membership_B(q5, EPWord::constant(0)));
    CHECK(membership_A(q5, EPWord::constant(0)).yes);
}

TEST_CASE("survivor constraints transport through the conjugacy") {
    // The bounding words of the symbolic survivor sets agree between the
    // source and its greedy hole system, so membership transports.
    Params q = quartic_pair();
    GreedyHoleSystem hs = to_hole_system(q);
    Params greedy(Scalar::algebraic(hs.beta_prime), Scalar(0));
    EPWord tau1_src = expansion(q, Scalar(1), Variant::Lower).certified();
    EPWord tau1_greedy = expansion(greedy, Scalar(1), Variant::Lower).certified();
    CHECK(tau1_src == tau1_greedy);
    EPWord hole_src = expansion(q, Scalar(0), Variant::Upper).certified();
    EPWord hole_greedy = expansion(greedy, hs.hole_t, Variant::Upper).certified();
    CHECK(hole_src == hole_greedy);

    std::mt19937_64 rng(43);
    std::uniform_int_distribution<int> pre_len(0, 4), per_len(1, 4), bit(0, 1);
    for (int i = 0; i < 200; ++i) {
        std::vector<uint8_t> pre(pre_len(rng)), per(per_len(rng));
        for (auto& b : pre) b = static_cast<uint8_t>(bit(rng));
        for (auto& b : per) b = static_cast<uint8_t>(bit(rng));
        EPWord w{FiniteWord(pre), FiniteWord(per)};
        auto member = [&](const EPWord& low, const EPWord& high) {
            for (size_t n = 0; n < w.distinct_shifts(); ++n) {
                EPWord s = shift(w, n);
                if (!(lex_le(low, s) && lex_lt(s, high))) return false;
            }
            return true;
        };
        CHECK(member(hole_src, tau1_src) == member(hole_greedy, tau1_greedy));
    }
}

TEST_CASE("finite-type approximation of an SFT source is itself") {
    auto seq = sft_approx_sequence(quartic_pair(), 2);
    REQUIRE(seq.size() == 2);
    for (const auto& a : seq) {
        CHECK(a.pair.lower == EPWord::parse("0(10)"));
        CHECK(a.pair.upper == EPWord::parse("1(0001)"));
        CHECK(a.hausdorff_bound == 0.0);
    }
}

TEST_CASE("finite-type approximation of the quintic greedy source") {
    Params src = quintic_greedy();
    auto seq = sft_approx_sequence(src, 2, {8, 12});
    KneadingPair source = kneading_invariants(src);
    REQUIRE(seq.size() == 2);
    for (size_t k = 0; k < seq.size(); ++k) {
        const auto& a = seq[k];
        CHECK(is_sft(a.params));
        CHECK(symbolically_contained(a.pair, source));
        CHECK(a.agreement_lower >= (k == 0 ? 8 : 12));
        CHECK(a.agreement_upper >= (k == 0 ? 8 : 12));
        CHECK(a.params.beta < src.beta);
    }
}

TEST_CASE("golden-family approximants increase toward the source") {
    // The non-finite-type family member with tau^+(0) = 0(001)^inf:
    // beta^5 = beta^3 + 2 beta^2 - 1, alpha = 1 - beta^2/(beta+1).
    Scalar b = Scalar::algebraic(max_real_root_in(ipoly({1, 0, -2, -1, 0, 1}), 1, Rational(8, 5)));
    Params member(b, Scalar(1) - b * b / (b + Scalar(1)));
    KneadingPair pair = kneading_invariants(member);
    CHECK(pair.lower == EPWord::parse("0(10)"));
    CHECK(pair.upper == prepend(1, EPWord::parse("0(001)")));
    CHECK_FALSE(is_sft(member));

    auto seq = sft_approx_sequence(member, 3, {6, 9, 12});
    KneadingPair source = kneading_invariants(member);
    double prev = 1.0;
    for (const auto& a : seq) {
        CHECK(is_sft(a.params));
        CHECK(symbolically_contained(a.pair, source));
        // kneading comparisons in the containment direction
        CHECK(lex_le(a.pair.lower, source.lower));
        CHECK(lex_le(source.upper, a.pair.upper));
        double bk = a.params.beta.to_double();
        CHECK(bk <= member.beta.to_double() + 1e-12);
        CHECK(bk >= prev - 1e-9);
        prev = bk;
    }
}
