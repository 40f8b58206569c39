#pragma once

#include "betaflow/rational.hpp"

#include <compare>
#include <cstdint>
#include <vector>

namespace betaflow {

// Finite binary word; the empty word is allowed.
class FiniteWord {
  public:
    FiniteWord() = default;
    explicit FiniteWord(std::vector<uint8_t> letters);
    static FiniteWord parse(const std::string& bits);

    size_t size() const { return letters_.size(); }
    bool empty() const { return letters_.empty(); }
    uint8_t operator[](size_t i) const { return letters_[i]; }
    const std::vector<uint8_t>& letters() const { return letters_; }
    void push_back(uint8_t b);

    FiniteWord subword(size_t from, size_t len) const;
    FiniteWord concat(const FiniteWord& o) const;
    FiniteWord reflected() const;
    int ones() const;

    bool operator==(const FiniteWord& o) const { return letters_ == o.letters_; }
    std::strong_ordering operator<=>(const FiniteWord& o) const;  // lexicographic, prefix-first

    std::string to_string() const;

  private:
    std::vector<uint8_t> letters_;
};

enum class Ordering { LT = -1, EQ = 0, GT = 1 };

// Eventually periodic binary word preperiod * period^infinity in canonical
// form: the period is primitive and the preperiod minimal.  Canonical form
// makes structural equality coincide with equality of infinite words.
class EPWord {
  public:
    // Canonicalizes on construction; the period must be nonempty.
    EPWord(FiniteWord preperiod, FiniteWord period);
    static EPWord periodic(const FiniteWord& period) { return EPWord(FiniteWord(), period); }
    static EPWord constant(uint8_t letter);
    // Text syntax: "pre(per)" for pre(per)^inf, "w*" for (w)^inf, and a
    // bare "(per)" for purely periodic words.
    static EPWord parse(const std::string& text);

    const FiniteWord& preperiod() const { return pre_; }
    const FiniteWord& period() const { return per_; }
    bool purely_periodic() const { return pre_.empty(); }

    uint8_t letter(size_t i) const;  // 0-based
    FiniteWord prefix(size_t n) const;
    // Number of distinct shifts (preperiod + period length).
    size_t distinct_shifts() const { return pre_.size() + per_.size(); }

    bool operator==(const EPWord& o) const { return pre_ == o.pre_ && per_ == o.per_; }

    std::string to_string() const;

  private:
    FiniteWord pre_, per_;
};

Ordering lex_compare(const EPWord& a, const EPWord& b);
// letter * w (concatenation in front).
EPWord prepend(uint8_t letter, const EPWord& w);
inline bool lex_lt(const EPWord& a, const EPWord& b) { return lex_compare(a, b) == Ordering::LT; }
inline bool lex_le(const EPWord& a, const EPWord& b) { return lex_compare(a, b) != Ordering::GT; }

EPWord shift(const EPWord& a, size_t k);
EPWord reflect(const EPWord& a);

// Lyndon: strictly smaller than every proper rotation.
bool is_lyndon(const FiniteWord& s);

// Balanced: one-counts of equal-length windows differ by at most one.
bool is_balanced(const EPWord& a);

// Canonical (minimal) decomposition lengths.
std::pair<size_t, size_t> smallest_period(const EPWord& a);

// Lexicographic comparison of an infinite word against a finite prefix
// window: compares the first n letters only.
Ordering compare_prefix(const EPWord& a, const EPWord& b, size_t n);

}  // namespace betaflow
