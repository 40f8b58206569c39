#include "betaflow/words.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace betaflow {

FiniteWord::FiniteWord(std::vector<uint8_t> letters) : letters_(std::move(letters)) {
    for (uint8_t b : letters_)
        if (b > 1) throw Error(ErrorCode::BadInput, "letters must be 0 or 1");
}

FiniteWord FiniteWord::parse(const std::string& bits) {
    std::vector<uint8_t> v;
    v.reserve(bits.size());
    for (char c : bits) {
        if (c == '0') v.push_back(0);
        else if (c == '1') v.push_back(1);
        else throw Error(ErrorCode::BadInput, std::string("bad letter '") + c + "' in word");
    }
    return FiniteWord(std::move(v));
}

void FiniteWord::push_back(uint8_t b) {
    if (b > 1) throw Error(ErrorCode::BadInput, "letters must be 0 or 1");
    letters_.push_back(b);
}

FiniteWord FiniteWord::subword(size_t from, size_t len) const {
    if (from + len > letters_.size()) throw Error(ErrorCode::BadInput, "subword out of range");
    return FiniteWord(std::vector<uint8_t>(letters_.begin() + from, letters_.begin() + from + len));
}

FiniteWord FiniteWord::concat(const FiniteWord& o) const {
    std::vector<uint8_t> v(letters_);
    v.insert(v.end(), o.letters_.begin(), o.letters_.end());
    return FiniteWord(std::move(v));
}

FiniteWord FiniteWord::reflected() const {
    std::vector<uint8_t> v(letters_);
    for (auto& b : v) b ^= 1;
    return FiniteWord(std::move(v));
}

int FiniteWord::ones() const { return static_cast<int>(std::accumulate(letters_.begin(), letters_.end(), 0)); }

std::strong_ordering FiniteWord::operator<=>(const FiniteWord& o) const {
    size_t n = std::min(size(), o.size());
    for (size_t i = 0; i < n; ++i) {
        if (letters_[i] != o.letters_[i]) return letters_[i] <=> o.letters_[i];
    }
    return size() <=> o.size();
}

std::string FiniteWord::to_string() const {
    std::string s;
    s.reserve(size());
    for (uint8_t b : letters_) s.push_back(b ? '1' : '0');
    return s;
}

namespace {

// Smallest d dividing |w| with w = (w|_d)^(|w|/d).
size_t primitive_root_length(const FiniteWord& w) {
    size_t n = w.size();
    for (size_t d = 1; d <= n; ++d) {
        if (n % d != 0) continue;
        bool ok = true;
        for (size_t i = d; i < n && ok; ++i) ok = (w[i] == w[i - d]);
        if (ok) return d;
    }
    return n;
}

}  // namespace

EPWord::EPWord(FiniteWord preperiod, FiniteWord period) : pre_(std::move(preperiod)), per_(std::move(period)) {
    if (per_.empty()) throw Error(ErrorCode::BadInput, "period must be nonempty");
    size_t d = primitive_root_length(per_);
    if (d < per_.size()) per_ = per_.subword(0, d);
    // Minimal preperiod: absorb trailing letters that match the rotated
    // period; a (b1..bq)^inf with last(a) == bq equals a' (bq b1..b(q-1))^inf.
    while (!pre_.empty() && pre_[pre_.size() - 1] == per_[per_.size() - 1]) {
        std::vector<uint8_t> rot;
        rot.reserve(per_.size());
        rot.push_back(per_[per_.size() - 1]);
        for (size_t i = 0; i + 1 < per_.size(); ++i) rot.push_back(per_[i]);
        per_ = FiniteWord(std::move(rot));
        pre_ = pre_.subword(0, pre_.size() - 1);
    }
}

EPWord EPWord::constant(uint8_t letter) { return EPWord(FiniteWord(), FiniteWord(std::vector<uint8_t>{letter})); }

EPWord EPWord::parse(const std::string& text) {
    auto star = text.find('*');
    if (star != std::string::npos) {
        if (star != text.size() - 1 || star == 0)
            throw Error(ErrorCode::BadInput, "'*' must terminate the word");
        return EPWord::periodic(FiniteWord::parse(text.substr(0, star)));
    }
    auto open = text.find('(');
    if (open == std::string::npos) throw Error(ErrorCode::BadInput, "eventually periodic word needs (period) or '*'");
    auto close = text.find(')');
    if (close != text.size() - 1 || close <= open + 1)
        throw Error(ErrorCode::BadInput, "malformed (period) group");
    return EPWord(FiniteWord::parse(text.substr(0, open)), FiniteWord::parse(text.substr(open + 1, close - open - 1)));
}

uint8_t EPWord::letter(size_t i) const {
    if (i < pre_.size()) return pre_[i];
    return per_[(i - pre_.size()) % per_.size()];
}

FiniteWord EPWord::prefix(size_t n) const {
    std::vector<uint8_t> v(n);
    for (size_t i = 0; i < n; ++i) v[i] = letter(i);
    return FiniteWord(std::move(v));
}

std::string EPWord::to_string() const { return pre_.to_string() + "(" + per_.to_string() + ")"; }

Ordering lex_compare(const EPWord& a, const EPWord& b) {
    size_t m = std::max(a.preperiod().size(), b.preperiod().size());
    size_t l = std::lcm(a.period().size(), b.period().size());
    size_t bound = m + l;
    for (size_t i = 0; i < bound; ++i) {
        uint8_t x = a.letter(i), y = b.letter(i);
        if (x != y) return x < y ? Ordering::LT : Ordering::GT;
    }
    return Ordering::EQ;
}

Ordering compare_prefix(const EPWord& a, const EPWord& b, size_t n) {
    for (size_t i = 0; i < n; ++i) {
        uint8_t x = a.letter(i), y = b.letter(i);
        if (x != y) return x < y ? Ordering::LT : Ordering::GT;
    }
    return Ordering::EQ;
}

EPWord shift(const EPWord& a, size_t k) {
    const size_t p = a.preperiod().size(), q = a.period().size();
    if (k <= p) {
        return EPWord(a.preperiod().subword(k, p - k), a.period());
    }
    size_t r = (k - p) % q;
    std::vector<uint8_t> rot;
    rot.reserve(q);
    for (size_t i = 0; i < q; ++i) rot.push_back(a.period()[(r + i) % q]);
    return EPWord(FiniteWord(), FiniteWord(std::move(rot)));
}

EPWord reflect(const EPWord& a) { return EPWord(a.preperiod().reflected(), a.period().reflected()); }

EPWord prepend(uint8_t letter, const EPWord& w) {
    FiniteWord pre(std::vector<uint8_t>{letter});
    return EPWord(pre.concat(w.preperiod()), w.period());
}

bool is_lyndon(const FiniteWord& s) {
    if (s.empty()) throw Error(ErrorCode::BadInput, "Lyndon test needs a nonempty word");
    const size_t n = s.size();
    // s^inf < sigma^k(s^inf) for k = 1..n-1; comparing rotations at equal
    // period length decides within n letters.
    for (size_t k = 1; k < n; ++k) {
        bool strictly_less = false;
        for (size_t i = 0; i < n; ++i) {
            uint8_t x = s[i], y = s[(i + k) % n];
            if (x != y) {
                strictly_less = x < y;
                break;
            }
        }
        if (!strictly_less) return false;
    }
    return true;
}

bool is_balanced(const EPWord& a) {
    const size_t p = a.preperiod().size(), q = a.period().size();
    const size_t max_len = p + 2 * q;
    const size_t unroll = p + q + max_len;
    std::vector<int> pref(unroll + 1, 0);
    for (size_t i = 0; i < unroll; ++i) pref[i + 1] = pref[i] + a.letter(i);
    for (size_t len = 1; len <= max_len; ++len) {
        int mn = len + 1, mx = -1;
        for (size_t i = 0; i < p + q; ++i) {
            int ones = pref[i + len] - pref[i];
            mn = std::min(mn, ones);
            mx = std::max(mx, ones);
        }
        if (mx - mn > 1) return false;
    }
    return true;
}

std::pair<size_t, size_t> smallest_period(const EPWord& a) { return {a.preperiod().size(), a.period().size()}; }

}  // namespace betaflow
