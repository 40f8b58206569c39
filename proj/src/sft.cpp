#include "betaflow/sft.hpp"

#include <algorithm>
#include <numeric>

namespace betaflow {

namespace {

// Distinct points of both kneading orbits of p, sorted ascending.
std::vector<Scalar> kneading_orbit_points(const Params& params, size_t max_steps) {
    std::vector<Scalar> pts;
    for (Variant v : {Variant::Lower, Variant::Upper}) {
        Orbit orb = compute_orbit(params, params.p, v, max_steps);
        if (!orb.cycle)
            throw Error(ErrorCode::NoPeriodWithinBudget, "kneading orbit not closed within budget");
        for (const Scalar& x : orb.points) pts.push_back(x);
    }
    std::sort(pts.begin(), pts.end(), [](const Scalar& a, const Scalar& b) { return a < b; });
    std::vector<Scalar> uniq;
    for (const Scalar& x : pts)
        if (uniq.empty() || !(uniq.back() == x)) uniq.push_back(x);
    return uniq;
}

SftSystem compile_impl(const Params& params) {
    std::vector<Scalar> pts = kneading_orbit_points(params, 4096);
    // T^-(p) = 1 and T^+(p) = 0 always sit in the orbits; the endpoints
    // close the partition.
    if (!(pts.front() == Scalar(0)) || !(pts.back() == Scalar(1)))
        throw Error(ErrorCode::MarkovViolation, "kneading orbits do not span [0,1]");

    SftSystem s{params, std::move(pts), {}, {}};
    const size_t n = s.partition.size() - 1;
    if (n < 1) throw Error(ErrorCode::MarkovViolation, "degenerate partition");
    for (size_t i = 0; i < n; ++i) {
        Sign rel = (s.partition[i + 1] - params.p).sign();
        s.letter_of.push_back(rel != Sign::Positive ? 0 : 1);
    }
    // Adjacency from exact cell images; every endpoint image must be a
    // partition point or the Markov property fails upstream.
    auto index_of = [&](const Scalar& x) -> size_t {
        for (size_t j = 0; j < s.partition.size(); ++j)
            if (s.partition[j] == x) return j;
        throw Error(ErrorCode::MarkovViolation, "cell image endpoint is not a partition point");
    };
    s.adjacency.assign(n, std::vector<uint8_t>(n, 0));
    for (size_t i = 0; i < n; ++i) {
        Scalar shift_term = params.alpha - Scalar(static_cast<long>(s.letter_of[i]));
        size_t lo = index_of(params.beta * s.partition[i] + shift_term);
        size_t hi = index_of(params.beta * s.partition[i + 1] + shift_term);
        if (lo >= hi) throw Error(ErrorCode::MarkovViolation, "cell image collapsed");
        for (size_t j = lo; j < hi; ++j) s.adjacency[i][j] = 1;
    }
    return s;
}

}  // namespace

Scalar SftSystem::min_cell_length() const {
    Scalar best = cell_length(0);
    for (size_t i = 1; i < cells(); ++i) {
        Scalar len = cell_length(i);
        if (len < best) best = len;
    }
    return best;
}

SftSystem compile(const Params& params) {
    if (!is_sft(params)) throw Error(ErrorCode::NotSft, "kneading invariants are not purely periodic");
    return compile_impl(params);
}

SftSystem compile_markov(const Params& params) { return compile_impl(params); }

Poly characteristic_polynomial(const std::vector<std::vector<Int>>& m) {
    // Samuelson-Berkowitz: division-free, exact over the integers.
    const size_t n = m.size();
    std::vector<Int> poly{Int(1)};  // leading-first coefficients
    for (size_t k = 0; k < n; ++k) {
        // Toeplitz column for principal submatrix of size k+1.
        // c[0] = -1 is implicit in the update scheme below.
        std::vector<Int> col(k + 2);
        col[0] = 1;
        col[1] = -m[k][k];
        std::vector<Int> row(k), tmp(k);
        for (size_t i = 0; i < k; ++i) row[i] = m[k][i];
        for (size_t d = 2; d <= k + 1; ++d) {
            Int acc = 0;
            for (size_t i = 0; i < k; ++i) acc += row[i] * m[i][k];
            col[d] = -acc;
            if (d <= k) {
                for (size_t i = 0; i < k; ++i) {
                    Int a = 0;
                    for (size_t j = 0; j < k; ++j) a += row[j] * m[j][i];
                    tmp[i] = a;
                }
                row.swap(tmp);
            }
        }
        std::vector<Int> next(poly.size() + 1, Int(0));
        for (size_t i = 0; i < poly.size(); ++i)
            for (size_t d = 0; d < col.size() && i + d < next.size(); ++d) next[i + d] += poly[i] * col[d];
        poly = std::move(next);
    }
    // Convert leading-first to constant-first.
    std::vector<Rational> coeffs(poly.size());
    for (size_t i = 0; i < poly.size(); ++i) coeffs[poly.size() - 1 - i] = Rational(poly[i]);
    return Poly(std::move(coeffs));
}

EntropyResult entropy_of_matrix(const std::vector<std::vector<uint8_t>>& m) {
    const size_t n = m.size();
    std::vector<std::vector<Int>> mi(n, std::vector<Int>(n));
    Rational max_row(0);
    for (size_t i = 0; i < n; ++i) {
        long row = 0;
        for (size_t j = 0; j < n; ++j) {
            mi[i][j] = m[i][j];
            row += m[i][j];
        }
        max_row = std::max(max_row, Rational(row));
    }
    Poly chi = characteristic_polynomial(mi);
    AlgebraicReal perron = max_real_root_in(chi, Rational(1, 2), max_row + 1);
    double lv = std::log(perron.to_double());
    return EntropyResult{perron, lv};
}

EntropyResult entropy(const SftSystem& s) { return entropy_of_matrix(s.adjacency); }

namespace {

std::vector<int> scc_of(const std::vector<std::vector<uint8_t>>& m) {
    const int n = static_cast<int>(m.size());
    std::vector<int> index(n, -1), low(n, 0), comp(n, -1);
    std::vector<int> stack;
    std::vector<bool> on_stack(n, false);
    int counter = 0, ncomp = 0;
    struct Frame { int v; int e; };
    for (int root = 0; root < n; ++root) {
        if (index[root] != -1) continue;
        std::vector<Frame> call{{root, 0}};
        index[root] = low[root] = counter++;
        stack.push_back(root);
        on_stack[root] = true;
        while (!call.empty()) {
            auto& [v, e] = call.back();
            if (e < n) {
                int u = e;
                ++e;
                if (!m[v][u]) continue;
                if (index[u] == -1) {
                    index[u] = low[u] = counter++;
                    stack.push_back(u);
                    on_stack[u] = true;
                    call.push_back({u, 0});
                } else if (on_stack[u]) {
                    low[v] = std::min(low[v], index[u]);
                }
            } else {
                if (low[v] == index[v]) {
                    for (;;) {
                        int u = stack.back();
                        stack.pop_back();
                        on_stack[u] = false;
                        comp[u] = ncomp;
                        if (u == v) break;
                    }
                    ++ncomp;
                }
                int child = v;
                call.pop_back();
                if (!call.empty()) low[call.back().v] = std::min(low[call.back().v], low[child]);
            }
        }
    }
    return comp;
}

// Cyclic period of a strongly connected 0/1 digraph restricted to `keep`.
size_t graph_period(const std::vector<std::vector<uint8_t>>& m, const std::vector<int>& keep) {
    if (keep.empty()) return 1;
    const int n = static_cast<int>(m.size());
    std::vector<long> depth(n, -1);
    std::vector<int> queue{keep[0]};
    std::vector<bool> in_set(n, false);
    for (int v : keep) in_set[v] = true;
    depth[keep[0]] = 0;
    long g = 0;
    for (size_t qi = 0; qi < queue.size(); ++qi) {
        int v = queue[qi];
        for (int u = 0; u < n; ++u) {
            if (!m[v][u] || !in_set[u]) continue;
            if (depth[u] == -1) {
                depth[u] = depth[v] + 1;
                queue.push_back(u);
            } else {
                long diff = depth[v] + 1 - depth[u];
                g = std::gcd(g, std::abs(diff));
            }
        }
    }
    return g == 0 ? 1 : static_cast<size_t>(g);
}

}  // namespace

TransitivityReport transitivity_of_matrix(const std::vector<std::vector<uint8_t>>& m) {
    const int n = static_cast<int>(m.size());
    std::vector<int> comp = scc_of(m);
    int ncomp = *std::max_element(comp.begin(), comp.end()) + 1;
    if (ncomp == 1) {
        std::vector<int> all(n);
        for (int i = 0; i < n; ++i) all[i] = i;
        size_t d = graph_period(m, all);
        TransitivityReport r;
        // A cyclic class structure of period >= 2 is the cycle of intervals
        // of the non-transitive classification, even with all cells
        // communicating.
        r.transitive = (d == 1);
        r.cycle_period = d;
        return r;
    }
    // Terminal components (no edges out); the dominant one carries the
    // invariant cycle of cells.
    std::vector<bool> terminal(ncomp, true);
    for (int v = 0; v < n; ++v)
        for (int u = 0; u < n; ++u)
            if (m[v][u] && comp[u] != comp[v]) terminal[comp[v]] = false;
    TransitivityReport r;
    r.transitive = false;
    double best = -1;
    for (int c = 0; c < ncomp; ++c) {
        if (!terminal[c]) continue;
        std::vector<int> verts;
        for (int v = 0; v < n; ++v)
            if (comp[v] == c) verts.push_back(v);
        // Perron weight of the component decides dominance.
        std::vector<std::vector<uint8_t>> sub(verts.size(), std::vector<uint8_t>(verts.size(), 0));
        for (size_t i = 0; i < verts.size(); ++i)
            for (size_t j = 0; j < verts.size(); ++j) sub[i][j] = m[verts[i]][verts[j]];
        double rate = verts.size() == 1 && !sub[0][0] ? 0.0 : entropy_of_matrix(sub).perron.to_double();
        if (rate > best) {
            best = rate;
            r.cycle_period = graph_period(m, verts);
        }
    }
    return r;
}

TransitivityReport transitivity_report(const SftSystem& s) {
    TransitivityReport r = transitivity_of_matrix(s.adjacency);
    if (r.transitive || r.cycle_period < 2) return r;
    // Spatial rotation step k: order the cyclic classes of the dominant
    // terminal component by leftmost cell and track where T sends them.
    const size_t n = s.cells();
    std::vector<int> comp = scc_of(s.adjacency);
    // recompute dominant terminal component
    int ncomp = *std::max_element(comp.begin(), comp.end()) + 1;
    std::vector<bool> terminal(ncomp, true);
    for (size_t v = 0; v < n; ++v)
        for (size_t u = 0; u < n; ++u)
            if (s.adjacency[v][u] && comp[u] != comp[v]) terminal[comp[v]] = false;
    double best = -1;
    std::vector<int> verts;
    for (int c = 0; c < ncomp; ++c) {
        if (!terminal[c]) continue;
        std::vector<int> vs;
        for (size_t v = 0; v < n; ++v)
            if (comp[v] == c) vs.push_back(static_cast<int>(v));
        std::vector<std::vector<uint8_t>> sub(vs.size(), std::vector<uint8_t>(vs.size(), 0));
        for (size_t i = 0; i < vs.size(); ++i)
            for (size_t j = 0; j < vs.size(); ++j) sub[i][j] = s.adjacency[vs[i]][vs[j]];
        double rate = vs.size() == 1 && !sub[0][0] ? 0.0 : entropy_of_matrix(sub).perron.to_double();
        if (rate > best) {
            best = rate;
            verts = vs;
        }
    }
    const size_t d = r.cycle_period;
    // classes by BFS depth mod d
    std::vector<long> depth(n, -1);
    std::vector<int> queue{verts[0]};
    std::vector<bool> in_set(n, false);
    for (int v : verts) in_set[v] = true;
    depth[verts[0]] = 0;
    for (size_t qi = 0; qi < queue.size(); ++qi) {
        int v = queue[qi];
        for (size_t u = 0; u < n; ++u)
            if (s.adjacency[v][u] && in_set[u] && depth[u] == -1) {
                depth[u] = depth[v] + 1;
                queue.push_back(static_cast<int>(u));
            }
    }
    // spatial order: class of the leftmost member
    std::vector<int> class_of_rank;
    std::vector<bool> seen(d, false);
    for (size_t v = 0; v < n; ++v) {
        if (!in_set[v]) continue;
        size_t cls = static_cast<size_t>(depth[v] % static_cast<long>(d));
        if (!seen[cls]) {
            seen[cls] = true;
            class_of_rank.push_back(static_cast<int>(cls));
        }
    }
    if (class_of_rank.size() == d) {
        // T advances BFS depth by one; find k with spatial_rank(T(class r)) =
        // r + k consistently.
        std::vector<int> rank_of_class(d);
        for (size_t rnk = 0; rnk < d; ++rnk) rank_of_class[class_of_rank[rnk]] = static_cast<int>(rnk);
        std::optional<size_t> k;
        bool consistent = true;
        for (size_t rnk = 0; rnk < d && consistent; ++rnk) {
            int cls = class_of_rank[rnk];
            int next_cls = static_cast<int>((cls + 1) % d);
            size_t step = (rank_of_class[next_cls] - rnk + d) % d;
            if (!k) k = step;
            consistent = (*k == step);
        }
        if (consistent && k && std::gcd(*k, d) == 1) r.co_prime_k = *k;
    }
    return r;
}

CylinderInterval cylinder(const SftSystem& s, const std::vector<size_t>& w) {
    if (w.empty()) throw Error(ErrorCode::BadInput, "empty cell word");
    for (size_t i = 0; i < w.size(); ++i) {
        if (w[i] >= s.cells()) throw Error(ErrorCode::BadInput, "cell index out of range");
        if (i + 1 < w.size() && !s.adjacency[w[i]][w[i + 1]])
            throw Error(ErrorCode::NotAdmissible, "cell word not adjacency-consistent");
    }
    // Pull the last cell back through the inverse branches.
    Scalar lo = s.cell_lo(w.back()), hi = s.cell_hi(w.back());
    for (size_t i = w.size() - 1; i-- > 0;) {
        Scalar digit(static_cast<long>(s.letter_of[w[i]]));
        lo = (lo - s.params.alpha + digit) / s.params.beta;
        hi = (hi - s.params.alpha + digit) / s.params.beta;
    }
    return CylinderInterval{lo, hi};
}

std::vector<std::vector<size_t>> admissible_cell_words(const SftSystem& s, size_t len) {
    std::vector<std::vector<size_t>> out;
    if (len == 0) return out;
    std::vector<size_t> cur;
    auto rec = [&](auto&& self, size_t depth) -> void {
        if (depth == len) {
            out.push_back(cur);
            return;
        }
        for (size_t c = 0; c < s.cells(); ++c) {
            if (!cur.empty() && !s.adjacency[cur.back()][c]) continue;
            cur.push_back(c);
            self(self, depth + 1);
            cur.pop_back();
        }
    };
    rec(rec, 0);
    return out;
}

Int cell_word_count(const SftSystem& s, size_t n) {
    if (n == 0) return 1;
    const size_t m = s.cells();
    std::vector<Int> v(m, Int(1));  // words of length 1 ending at each cell
    for (size_t step = 1; step < n; ++step) {
        std::vector<Int> nv(m, Int(0));
        for (size_t i = 0; i < m; ++i)
            for (size_t j = 0; j < m; ++j)
                if (s.adjacency[i][j]) nv[j] += v[i];
        v = std::move(nv);
    }
    Int total = 0;
    for (const Int& x : v) total += x;
    return total;
}

BlockSystem make_block_system(const SftSystem& s, size_t n) {
    BlockSystem b;
    b.base = &s;
    b.block = n;
    b.cells = admissible_cell_words(s, n);
    const size_t m = b.cells.size();
    b.adjacency.assign(m, std::vector<uint8_t>(m, 0));
    for (size_t i = 0; i < m; ++i)
        for (size_t j = 0; j < m; ++j) {
            // uv admissible as a 2n-word: the junction edge must exist.
            b.adjacency[i][j] = s.adjacency[b.cells[i].back()][b.cells[j].front()];
        }
    return b;
}

}  // namespace betaflow
