#include "betaflow/oracles.hpp"

#include <random>

namespace betaflow::oracles {

namespace {

struct Piece {
    std::string word;
    Scalar lo, hi;  // half-open interval of points with this itinerary
};

// One subdivision step under the upper map.
std::vector<Piece> subdivide(const Params& params, std::vector<Piece> pieces) {
    std::vector<Piece> next;
    for (auto& pc : pieces) {
        // Split at p when the interior straddles it.
        std::vector<std::pair<Scalar, Scalar>> parts;
        if (pc.lo < params.p && params.p < pc.hi) {
            parts.emplace_back(pc.lo, params.p);
            parts.emplace_back(params.p, pc.hi);
        } else {
            parts.emplace_back(pc.lo, pc.hi);
        }
        for (auto& [lo, hi] : parts) {
            uint8_t digit = lo < params.p ? 0 : 1;
            Piece img;
            img.word = pc.word + static_cast<char>('0' + digit);
            img.lo = params.beta * lo + params.alpha - Scalar(static_cast<long>(digit));
            img.hi = params.beta * hi + params.alpha - Scalar(static_cast<long>(digit));
            next.push_back(std::move(img));
        }
    }
    return next;
}

double map_once(double beta, double alpha, double p, double x) {
    return x < p ? beta * x + alpha : beta * x + alpha - 1;
}

}  // namespace

EnumerationReport brute_force_language(const Params& params, size_t n) {
    EnumerationReport rep;
    rep.n = n;
    std::vector<Piece> pieces{{"", Scalar(0), Scalar(1)}};
    for (size_t step = 0; step < n; ++step) pieces = subdivide(params, pieces);
    for (auto& pc : pieces) rep.words.insert(pc.word);
    return rep;
}

EnumerationReport brute_force_cell_language(const SftSystem& s, size_t n) {
    EnumerationReport rep;
    rep.n = n;
    struct CellPiece {
        std::string word;
        Scalar lo, hi;
    };
    auto cell_of = [&](const Scalar& x) -> size_t {
        for (size_t i = s.cells(); i-- > 0;)
            if (!(x < s.cell_lo(i))) return i;
        throw Error(ErrorCode::BadInput, "point below the partition");
    };
    std::vector<CellPiece> pieces{{"", Scalar(0), Scalar(1)}};
    for (size_t step = 0; step < n; ++step) {
        std::vector<CellPiece> next;
        for (auto& pc : pieces) {
            // Split at every partition point inside the piece.
            std::vector<Scalar> cuts{pc.lo};
            for (size_t j = 0; j + 1 < s.partition.size(); ++j) {
                const Scalar& a = s.partition[j + 1];
                if (pc.lo < a && a < pc.hi) cuts.push_back(a);
            }
            cuts.push_back(pc.hi);
            for (size_t j = 0; j + 1 < cuts.size(); ++j) {
                size_t cell = cell_of(cuts[j]);
                uint8_t digit = s.letter_of[cell];
                CellPiece img;
                img.word = pc.word + static_cast<char>('a' + cell);
                img.lo = s.params.beta * cuts[j] + s.params.alpha - Scalar(static_cast<long>(digit));
                img.hi = s.params.beta * cuts[j + 1] + s.params.alpha - Scalar(static_cast<long>(digit));
                next.push_back(std::move(img));
            }
        }
        pieces = std::move(next);
        for (auto& pc : pieces)
            if (pc.word.size() == n) rep.words.insert(pc.word);
    }
    if (n == 0) rep.words.insert("");
    return rep;
}

Int brute_force_survivor_count(const Params& params, const EPWord& low, size_t n) {
    // Depth-first over binary prefixes, pruning whenever some suffix is
    // decided below `low` or at/above tau^-(1) within the window; a prefix
    // survives when no suffix comparison has failed yet.
    EPWord high = expansion(params, Scalar(1), Variant::Lower).certified();
    std::vector<uint8_t> word;
    Int count = 0;

    auto ok = [&]() {
        for (size_t start = 0; start < word.size(); ++start) {
            // compare word[start..] against low (>=) and high (<)
            bool low_tight = true, high_tight = true;
            for (size_t i = 0; start + i < word.size() && (low_tight || high_tight); ++i) {
                uint8_t a = word[start + i];
                if (low_tight) {
                    uint8_t e = low.letter(i);
                    if (a < e) return false;
                    if (a > e) low_tight = false;
                }
                if (high_tight) {
                    uint8_t e = high.letter(i);
                    if (a > e) return false;
                    if (a < e) high_tight = false;
                }
            }
        }
        return true;
    };
    auto rec = [&](auto&& self) -> void {
        if (!ok()) return;
        if (word.size() == n) {
            ++count;
            return;
        }
        for (uint8_t a = 0; a < 2; ++a) {
            word.push_back(a);
            self(self);
            word.pop_back();
        }
    };
    rec(rec);
    return count;
}

double box_counting_dim(const Params& params, double t, size_t grid, size_t steps) {
    if (grid > (size_t(1) << 20)) throw Error(ErrorCode::BadInput, "grid too fine");
    double beta = params.beta.to_double(), alpha = params.alpha.to_double(), p = params.p.to_double();
    size_t surviving = 0;
    for (size_t i = 0; i < grid; ++i) {
        double x = (static_cast<double>(i) + 0.5) / static_cast<double>(grid);
        bool survives = true;
        double y = x;
        for (size_t s = 0; s < steps && survives; ++s) {
            if (y >= 0 && y < t) survives = false;
            y = map_once(beta, alpha, p, y);
            if (y < 0) y = 0;
            if (y > 1) y = 1;
        }
        if (survives) ++surviving;
    }
    if (surviving == 0) return 0.0;
    return std::log(static_cast<double>(surviving)) / std::log(static_cast<double>(grid));
}

double escape_fraction(const Params& params, double t, size_t samples, size_t steps, uint64_t seed) {
    double beta = params.beta.to_double(), alpha = params.alpha.to_double(), p = params.p.to_double();
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    size_t escaped = 0;
    for (size_t i = 0; i < samples; ++i) {
        double y = unif(rng);
        for (size_t s = 0; s < steps; ++s) {
            if (y >= 0 && y < t) {
                ++escaped;
                break;
            }
            y = map_once(beta, alpha, p, y);
            if (y < 0) y = 0;
            if (y > 1) y = 1;
        }
    }
    return static_cast<double>(escaped) / static_cast<double>(samples);
}

}  // namespace betaflow::oracles
