#include "betaflow/word_automaton.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>

namespace betaflow {

namespace {

// Pending comparison: the current suffix has matched `offset` letters of
// bound word `word` (0..3 = low0, high0, low1, high1).
struct Pending {
    uint8_t word;
    uint32_t offset;
    auto operator<=>(const Pending&) const = default;
};

using StateKey = std::vector<Pending>;

}  // namespace

WordAutomaton::WordAutomaton(const Windows& w, size_t max_states) {
    const EPWord* words[4] = {&w.low0, &w.high0, &w.low1, &w.high1};
    auto fold = [&](uint8_t wi, uint32_t off) -> uint32_t {
        const EPWord& ep = *words[wi];
        uint32_t p = static_cast<uint32_t>(ep.preperiod().size());
        uint32_t q = static_cast<uint32_t>(ep.period().size());
        if (off >= p + q) return p + (off - p) % q;
        return off;
    };

    std::map<StateKey, int> ids;
    std::vector<StateKey> keys;
    auto intern = [&](StateKey key) {
        std::sort(key.begin(), key.end());
        key.erase(std::unique(key.begin(), key.end()), key.end());
        auto [it, inserted] = ids.emplace(std::move(key), static_cast<int>(keys.size()));
        if (inserted) {
            keys.push_back(it->first);
            next_.push_back({-1, -1});
            if (keys.size() > max_states)
                throw Error(ErrorCode::SearchExhausted, "window automaton exceeded the state budget");
        }
        return it->second;
    };

    intern(StateKey{});
    for (size_t s = 0; s < keys.size(); ++s) {
        for (uint8_t a = 0; a < 2; ++a) {
            StateKey cur = keys[s];
            // Spawn the new length-1 suffix against its leading-letter window.
            uint8_t low_id = a == 0 ? 0 : 2, high_id = a == 0 ? 1 : 3;
            bool reject = false;
            StateKey nxt;
            if (a < words[low_id]->letter(0)) reject = true;
            else if (a == words[low_id]->letter(0)) nxt.push_back({low_id, fold(low_id, 1)});
            if (a > words[high_id]->letter(0)) reject = true;
            else if (a == words[high_id]->letter(0)) nxt.push_back({high_id, fold(high_id, 1)});
            // Advance the pending comparisons.
            for (const Pending& pd : cur) {
                uint8_t expect = words[pd.word]->letter(pd.offset);
                bool is_low = (pd.word % 2 == 0);
                if (a == expect) {
                    nxt.push_back({pd.word, fold(pd.word, pd.offset + 1)});
                } else if (is_low ? (a < expect) : (a > expect)) {
                    reject = true;
                }
                // Otherwise the suffix is released: its comparison is settled.
            }
            if (reject) continue;
            next_[s][a] = intern(std::move(nxt));
        }
    }
}

std::vector<Int> WordAutomaton::count_words(size_t n) const {
    std::vector<Int> out;
    out.reserve(n + 1);
    std::vector<Int> cur(num_states(), Int(0));
    cur[0] = 1;
    out.push_back(1);
    for (size_t len = 1; len <= n; ++len) {
        std::vector<Int> nxt(num_states(), Int(0));
        for (size_t s = 0; s < num_states(); ++s) {
            if (cur[s] == 0) continue;
            for (uint8_t a = 0; a < 2; ++a) {
                int t = next_[s][a];
                if (t >= 0) nxt[t] += cur[s];
            }
        }
        cur = std::move(nxt);
        Int total = 0;
        for (const Int& v : cur) total += v;
        out.push_back(total);
    }
    return out;
}

bool WordAutomaton::positive_entropy() const {
    // Tarjan SCC; exponential growth iff some component has more internal
    // edges than vertices (two distinct cycles through one component).
    const int n = static_cast<int>(num_states());
    std::vector<int> index(n, -1), low(n, 0), comp(n, -1);
    std::vector<int> stack;
    std::vector<bool> on_stack(n, false);
    int counter = 0, ncomp = 0;
    struct Frame { int v; int edge; };
    for (int root = 0; root < n; ++root) {
        if (index[root] != -1) continue;
        std::vector<Frame> call{{root, 0}};
        index[root] = low[root] = counter++;
        stack.push_back(root);
        on_stack[root] = true;
        while (!call.empty()) {
            auto& [v, e] = call.back();
            if (e < 2) {
                int u = next_[v][e];
                ++e;
                if (u < 0) continue;
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
    std::vector<int> verts(ncomp, 0), edges(ncomp, 0);
    for (int v = 0; v < n; ++v) {
        ++verts[comp[v]];
        for (uint8_t a = 0; a < 2; ++a) {
            int u = next_[v][a];
            if (u >= 0 && comp[u] == comp[v]) ++edges[comp[v]];
        }
    }
    for (int c = 0; c < ncomp; ++c)
        if (edges[c] > verts[c]) return true;
    return false;
}

double WordAutomaton::entropy_estimate(size_t n) const {
    auto counts = count_words(n);
    if (counts[n] == 0) return 0.0;
    const Int& c = counts[n];
    double logc;
    if (c < Int(1) << 52) {
        logc = std::log(c.convert_to<double>());
    } else {
        size_t b = msb(c);
        Int top = c >> (b - 52);
        logc = std::log(top.convert_to<double>()) + static_cast<double>(b - 52) * std::log(2.0);
    }
    return logc / static_cast<double>(n);
}

}  // namespace betaflow
