#pragma once

#include "betaflow/words.hpp"

#include <vector>

namespace betaflow {

// Deterministic automaton for binary words all of whose suffixes must stay
// inside a lexicographic window chosen by the suffix's leading letter:
// low[b] <= s < high[b] for a suffix s starting with b.  States track the
// set of suffixes still comparing letter-for-letter against a bound, with
// offsets folded onto the eventually periodic shape of each bound word.
// Prefix counting is unaffected by whether the bounds are weak or strict,
// so one automaton serves the closed and open window variants.
class WordAutomaton {
  public:
    struct Windows {
        EPWord low0, high0;  // window for suffixes starting with 0
        EPWord low1, high1;  // window for suffixes starting with 1
    };
    // Uniform window low <= s < high for every suffix.
    static Windows uniform(const EPWord& low, const EPWord& high) { return Windows{low, high, low, high}; }

    explicit WordAutomaton(const Windows& w, size_t max_states = 200000);

    size_t num_states() const { return next_.size(); }
    // next state on letter, or -1 when the word is rejected
    int next(int state, uint8_t letter) const { return next_[state][letter]; }
    int start_state() const { return 0; }

    // Number of accepted words of each length 0..n.
    std::vector<Int> count_words(size_t n) const;

    // True when the accepted language grows exponentially, i.e. some
    // strongly connected component carries two distinct cycles.
    bool positive_entropy() const;

    // log(count_words(n))/n, a numeric entropy estimate.
    double entropy_estimate(size_t n = 48) const;

  private:
    std::vector<std::array<int, 2>> next_;
};

}  // namespace betaflow
