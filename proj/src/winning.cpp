#include "betaflow/winning.hpp"

#include <cmath>

namespace betaflow {

size_t mixing_time_of_matrix(const std::vector<std::vector<uint8_t>>& m) {
    const size_t n = m.size();
    auto positive = [&](const std::vector<std::vector<uint8_t>>& a) {
        for (const auto& row : a)
            for (uint8_t v : row)
                if (!v) return false;
        return true;
    };
    std::vector<std::vector<uint8_t>> pw = m;
    const size_t bound = n * n + 2;
    for (size_t k = 1; k <= bound; ++k) {
        if (positive(pw)) return k;
        std::vector<std::vector<uint8_t>> nx(n, std::vector<uint8_t>(n, 0));
        for (size_t i = 0; i < n; ++i)
            for (size_t l = 0; l < n; ++l)
                if (pw[i][l])
                    for (size_t j = 0; j < n; ++j) nx[i][j] = nx[i][j] || (pw[i][l] && m[l][j]);
        pw = std::move(nx);
    }
    throw Error(ErrorCode::NotTransitive, "no positive power within the primitivity bound");
}

size_t mixing_time(const SftSystem& s) { return mixing_time_of_matrix(s.adjacency); }

std::vector<size_t> cell_word_of_point(const SftSystem& s, const Scalar& x, size_t len) {
    std::vector<size_t> out;
    Scalar cur = x;
    auto cell_of = [&](const Scalar& v) -> size_t {
        for (size_t i = s.cells(); i-- > 0;)
            if (!(v < s.cell_lo(i))) return i;
        throw Error(ErrorCode::BadInput, "point below the partition");
    };
    for (size_t k = 0; k < len; ++k) {
        size_t c = cell_of(cur);
        out.push_back(c);
        cur = s.params.beta * cur + s.params.alpha - Scalar(static_cast<long>(s.letter_of[c]));
    }
    return out;
}

namespace {

// Generic cylinder-system view: the base Markov system, or its n-block
// power restricted to a set of blocks.
struct CylView {
    const SftSystem* base;
    size_t block = 1;                       // letters per symbol
    std::vector<std::vector<size_t>> alph;  // symbol id -> base cell word
    std::vector<std::vector<uint8_t>> adj;

    size_t symbols() const { return alph.size(); }
    std::vector<size_t> concat(const std::vector<size_t>& word) const {
        std::vector<size_t> out;
        for (size_t sym : word)
            for (size_t c : alph[sym]) out.push_back(c);
        return out;
    }
    CylinderInterval cyl(const std::vector<size_t>& word) const { return cylinder(*base, concat(word)); }
    Scalar rho() const {
        // smallest symbol cylinder
        Scalar best = cyl({0}).length();
        for (size_t i = 1; i < symbols(); ++i) {
            Scalar l = cyl({i}).length();
            if (l < best) best = l;
        }
        return best;
    }
    Scalar expansion_rate() const {
        Scalar b = base->params.beta;
        Scalar r(1);
        for (size_t i = 0; i < block; ++i) r = r * b;
        return r;
    }
};

CylView base_view(const SftSystem& s) {
    CylView v;
    v.base = &s;
    v.block = 1;
    for (size_t i = 0; i < s.cells(); ++i) v.alph.push_back({i});
    v.adj = s.adjacency;
    return v;
}

std::vector<std::vector<size_t>> words_up_to(const CylView& v, size_t depth) {
    std::vector<std::vector<size_t>> out;
    std::vector<size_t> cur;
    auto rec = [&](auto&& self) -> void {
        if (!cur.empty()) out.push_back(cur);
        if (cur.size() == depth) return;
        for (size_t c = 0; c < v.symbols(); ++c) {
            if (!cur.empty() && !v.adj[cur.back()][c]) continue;
            cur.push_back(c);
            self(self);
            cur.pop_back();
        }
    };
    rec(rec);
    return out;
}

Scalar interval_dist(const CylinderInterval& a, const CylinderInterval& b) {
    if ((b.lo - a.hi).sign() != Sign::Negative) return b.lo - a.hi;
    if ((a.lo - b.hi).sign() != Sign::Negative) return a.lo - b.hi;
    return Scalar(0);
}

RatioReport ratio_condition(const CylView& v, const std::vector<size_t>& x_word, size_t depth) {
    RatioReport rep;
    rep.depth = depth;
    rep.pass = true;
    Scalar rho = v.rho();
    Scalar rate = v.expansion_rate();
    auto us = words_up_to(v, depth);
    Scalar bound_scale(1);
    for (size_t i = 1; i <= depth && i <= x_word.size(); ++i) {
        bound_scale = bound_scale * rate;  // rate^i
        std::vector<size_t> wi(x_word.begin(), x_word.begin() + i);
        Scalar sup(0);
        bool any = false;
        for (const auto& u : us) {
            if (!v.adj[u.back()][wi.front()]) continue;
            std::vector<size_t> uw = u;
            uw.insert(uw.end(), wi.begin(), wi.end());
            Scalar num = v.cyl(uw).length();
            Scalar den = v.cyl(u).length();
            // ratio num/den; track the sup as the exact maximum
            if (!any || sup * den < num) {
                sup = num / den;
                any = true;
            }
            // exact bound check: num * rho * rate^i <= den
            if ((num * rho * bound_scale - den).sign() == Sign::Positive) rep.pass = false;
        }
        rep.sup_ratio.push_back(any ? sup.to_double() : 0.0);
        Scalar bnd = Scalar(1) / (bound_scale * rho);
        rep.bound.push_back(bnd.to_double());
    }
    return rep;
}

DistanceReport distance_condition(const CylView& v, const std::vector<size_t>& x_word,
                                  const Rational& gamma, size_t depth, size_t mixing_m) {
    DistanceReport rep;
    rep.depth = depth;
    rep.pass = true;
    Scalar rho = v.rho();
    Scalar rate = v.expansion_rate();
    Scalar c = rho;
    for (size_t i = 0; i < mixing_m + 1; ++i) c = c / rate;  // rho * rate^-(m+1)
    rep.c_bound = c.to_double();

    size_t wi_len = std::min(depth, x_word.size());
    std::vector<size_t> wi(x_word.begin(), x_word.begin() + wi_len);

    auto ws = words_up_to(v, depth);
    std::vector<CylinderInterval> cyls, child;
    std::vector<Scalar> lens;
    std::vector<bool> extendable;
    for (const auto& w : ws) {
        CylinderInterval ci = v.cyl(w);
        lens.push_back(ci.length());
        cyls.push_back(std::move(ci));
        bool ext = v.adj[w.back()][wi.front()] != 0;
        extendable.push_back(ext);
        if (ext) {
            std::vector<size_t> ww = w;
            ww.insert(ww.end(), wi.begin(), wi.end());
            child.push_back(v.cyl(ww));
        } else {
            child.emplace_back();
        }
    }
    Rational g4 = gamma / 4;
    std::optional<Scalar> worst;
    for (size_t a = 0; a < ws.size(); ++a) {
        if (!extendable[a]) continue;
        for (size_t b = a + 1; b < ws.size(); ++b) {
            if (!extendable[b]) continue;
            // gamma/4-comparable: g4 <= |I(a)|/|I(b)| <= 1/g4
            Scalar la = lens[a], lb = lens[b];
            if ((la - lb * Scalar(g4)).sign() == Sign::Negative) continue;
            if ((lb - la * Scalar(g4)).sign() == Sign::Negative) continue;
            ++rep.pairs_checked;
            Scalar dist_new = interval_dist(child[a], child[b]);
            if (dist_new.sign() == Sign::Zero) {
                ++rep.zero_distance_pairs;
                continue;
            }
            Scalar dist_old = interval_dist(cyls[a], cyls[b]);
            if (dist_old.sign() == Sign::Zero) continue;  // vacuous
            if ((dist_new - c * dist_old).sign() == Sign::Negative) rep.pass = false;
            Scalar ratio = dist_new / dist_old;
            if (!worst || ratio < *worst) worst = ratio;
        }
    }
    if (worst) {
        rep.worst_set = true;
        rep.worst_ratio = worst->to_double();
    }
    return rep;
}

size_t agreement_horizon(const std::vector<size_t>& w, size_t k_max) {
    // max over k in 1..k_max of the first-disagreement index of sigma^k(w)
    // against w (1-based; capped by the available prefix).
    size_t best = 0;
    for (size_t k = 1; k <= k_max && k < w.size(); ++k) {
        size_t i = 0;
        while (k + i < w.size() && w[i] == w[k + i]) ++i;
        best = std::max(best, i + 1);
    }
    return best;
}

WinningCertificate certify(const CylView& v, const std::vector<size_t>& x_word, const Rational& gamma,
                           size_t depth) {
    WinningCertificate cert;
    cert.transitive = true;
    cert.mixing_time_m = mixing_time_of_matrix(v.adj);
    Scalar rho = v.rho();
    Scalar rate = v.expansion_rate();
    // k0 = ceil(log(4/(gamma rho)) / log rate): smallest k with
    // rate^k * gamma * rho >= 4.
    Scalar acc(1);
    size_t k0 = 0;
    while ((acc * Scalar(gamma) * rho - Scalar(4)).sign() == Sign::Negative && k0 < 512) {
        acc = acc * rate;
        ++k0;
    }
    cert.k0 = k0;
    cert.big_m = agreement_horizon(x_word, std::max<size_t>(k0, 8));
    cert.i_star = cert.k0 + cert.mixing_time_m + cert.big_m;
    Scalar c = rho;
    for (size_t i = 0; i < cert.mixing_time_m + 1; ++i) c = c / rate;
    cert.c = c.to_double();
    cert.ratio = ratio_condition(v, x_word, depth);
    cert.distance = distance_condition(v, x_word, gamma, depth, cert.mixing_time_m);
    cert.pass = cert.ratio.pass && cert.distance.pass;
    return cert;
}

}  // namespace

RatioReport check_ratio_condition(const SftSystem& s, const std::vector<size_t>& x_word, size_t depth) {
    return ratio_condition(base_view(s), x_word, depth);
}

DistanceReport check_distance_condition(const SftSystem& s, const std::vector<size_t>& x_word,
                                        const Rational& gamma, size_t depth) {
    return distance_condition(base_view(s), x_word, gamma, depth, mixing_time(s));
}

WinningReport winning_report(const Params& params, const Scalar& xi, const Rational& gamma, size_t depth) {
    if (!(gamma > 0 && gamma < 1)) throw Error(ErrorCode::BadInput, "gamma must lie in (0,1)");
    SftSystem s = compile(params);
    TransitivityReport tr = transitivity_report(s);
    WinningReport rep;
    if (tr.transitive && tr.cycle_period == 1) {
        std::vector<size_t> xw = cell_word_of_point(s, xi, depth + 8);
        rep.pieces.push_back(certify(base_view(s), xw, gamma, depth));
        rep.pass = rep.pieces.front().pass;
        return rep;
    }
    // Composed certificates for T^n along the orbit of xi (the power map
    // restricted to each cyclic piece is mixing).
    rep.composed = true;
    const size_t n = std::max<size_t>(tr.cycle_period, 2);
    rep.cycle_period = n;
    BlockSystem blocks = make_block_system(s, n);
    // cyclic classes: group blocks by their starting cell's class via BFS
    // on the dominant component; blocks whose cells leave the recurrent
    // part are dropped (transient).
    std::vector<size_t> base_word = cell_word_of_point(s, xi, n * (depth + 6) + n);
    for (size_t offset = 0; offset <= n; ++offset) {
        // block word of T^offset(xi)
        std::vector<size_t> cells(base_word.begin() + offset, base_word.end());
        std::vector<std::vector<size_t>> chunks;
        for (size_t i = 0; i + n <= cells.size(); i += n)
            chunks.push_back(std::vector<size_t>(cells.begin() + i, cells.begin() + i + n));
        // restrict the block alphabet to blocks reachable among themselves
        // and containing the orbit piece
        std::vector<size_t> ids;
        std::vector<size_t> word_ids;
        auto find_block = [&](const std::vector<size_t>& blk) -> int {
            for (size_t i = 0; i < blocks.cells.size(); ++i)
                if (blocks.cells[i] == blk) return static_cast<int>(i);
            return -1;
        };
        bool ok = true;
        for (const auto& ch : chunks) {
            int id = find_block(ch);
            if (id < 0) {
                ok = false;
                break;
            }
            word_ids.push_back(static_cast<size_t>(id));
        }
        if (!ok || word_ids.empty()) continue;
        // the communicating class of the first block
        std::vector<std::vector<uint8_t>> badj = blocks.adjacency;
        std::vector<int> comp_mark(blocks.cells.size(), 0);
        // forward closure from the orbit block, then keep the strongly
        // connected part by intersecting with the backward closure
        auto closure = [&](size_t start, bool forward) {
            std::vector<bool> seen(blocks.cells.size(), false);
            std::vector<size_t> stack{start};
            seen[start] = true;
            while (!stack.empty()) {
                size_t x = stack.back();
                stack.pop_back();
                for (size_t y = 0; y < blocks.cells.size(); ++y) {
                    bool e = forward ? badj[x][y] : badj[y][x];
                    if (e && !seen[y]) {
                        seen[y] = true;
                        stack.push_back(y);
                    }
                }
            }
            return seen;
        };
        size_t anchor = word_ids.size() > 1 ? word_ids[1] : word_ids[0];
        auto fwd = closure(anchor, true), bwd = closure(anchor, false);
        std::vector<size_t> keep;
        for (size_t i = 0; i < blocks.cells.size(); ++i)
            if (fwd[i] && bwd[i]) keep.push_back(i);
        if (keep.size() < 2) continue;
        CylView v;
        v.base = &s;
        v.block = n;
        std::vector<int> remap(blocks.cells.size(), -1);
        for (size_t i = 0; i < keep.size(); ++i) {
            remap[keep[i]] = static_cast<int>(i);
            v.alph.push_back(blocks.cells[keep[i]]);
        }
        v.adj.assign(keep.size(), std::vector<uint8_t>(keep.size(), 0));
        for (size_t i = 0; i < keep.size(); ++i)
            for (size_t j = 0; j < keep.size(); ++j) v.adj[i][j] = blocks.adjacency[keep[i]][keep[j]];
        std::vector<size_t> xw;
        bool in_class = true;
        for (size_t id : word_ids) {
            if (remap[id] < 0) {
                in_class = false;
                break;
            }
            xw.push_back(static_cast<size_t>(remap[id]));
        }
        if (!in_class || xw.size() < 2) continue;
        try {
            rep.pieces.push_back(certify(v, xw, gamma, depth));
        } catch (const Error&) {
            continue;  // transient piece: no positive power
        }
    }
    rep.pass = !rep.pieces.empty();
    for (const auto& piece : rep.pieces) rep.pass = rep.pass && piece.pass;
    return rep;
}

}  // namespace betaflow
