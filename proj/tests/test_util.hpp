#pragma once

#include "betaflow/kneading.hpp"

#include <vector>

namespace betaflow::testutil {

inline Poly ipoly(std::initializer_list<long> constant_first) {
    std::vector<Rational> c;
    for (long v : constant_first) c.emplace_back(v);
    return Poly(std::move(c));
}

inline Poly golden_poly() { return ipoly({-1, -1, 1}); }
inline Poly quartic_poly() { return ipoly({-1, -1, -1, 0, 1}); }
inline Poly quintic_poly() { return ipoly({1, 1, -2, -1, -1, 1}); }

inline Params golden_greedy() {
    return Params(Scalar::algebraic(max_real_root_in(golden_poly(), 1, 2)), Scalar(0));
}

inline Params quartic_pair() {
    Scalar b = Scalar::algebraic(max_real_root_in(quartic_poly(), 1, 2));
    return Params(b, Scalar(1) - b * b / (b + Scalar(1)));
}

inline Params quintic_greedy() {
    return Params(Scalar::algebraic(max_real_root_in(quintic_poly(), 1, 2)), Scalar(0));
}

// Enumerates valid purely periodic kneading pairs with period lengths up
// to the given bounds, in lexicographic order of the period words.  Used
// to manufacture exact SFT parameter pairs.
inline std::vector<KneadingPair> enumerate_periodic_pairs(size_t max_lower_len, size_t max_upper_len,
                                                          size_t limit) {
    std::vector<KneadingPair> out;
    auto words_of_len = [](size_t len, uint8_t first) {
        std::vector<FiniteWord> ws;
        for (unsigned long m = 0; m < (1UL << (len - 1)); ++m) {
            std::vector<uint8_t> v{first};
            for (size_t i = 1; i < len; ++i) v.push_back((m >> (len - 1 - i)) & 1);
            ws.emplace_back(std::move(v));
        }
        return ws;
    };
    for (size_t ll = 1; ll <= max_lower_len && out.size() < limit; ++ll) {
        for (const FiniteWord& lw : words_of_len(ll, 0)) {
            EPWord lower = EPWord::periodic(lw);
            if (lower.period().size() != ll) continue;  // skip non-primitive
            for (size_t ul = 1; ul <= max_upper_len && out.size() < limit; ++ul) {
                for (const FiniteWord& uw : words_of_len(ul, 1)) {
                    EPWord upper = EPWord::periodic(uw);
                    if (upper.period().size() != ul) continue;
                    if (validate_kneading_pair(lower, upper).valid) {
                        out.push_back({lower, upper});
                        if (out.size() >= limit) return out;
                    }
                }
            }
        }
    }
    return out;
}

}  // namespace betaflow::testutil
