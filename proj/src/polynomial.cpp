#include "betaflow/polynomial.hpp"

#include <algorithm>
#include <sstream>

namespace betaflow {

std::string rational_to_decimal(const Rational& r, int digits) {
    Int num = numerator(r);
    Int den = denominator(r);
    bool neg = num < 0;
    if (neg) num = -num;
    Int scale = 1;
    for (int i = 0; i < digits; ++i) scale *= 10;
    Int scaled = (num * scale * 2 + den) / (den * 2);  // round half up
    Int ip = scaled / scale, fp = scaled % scale;
    std::ostringstream os;
    if (neg && (ip != 0 || fp != 0)) os << '-';
    os << ip;
    if (digits > 0) {
        std::string f = fp.str();
        os << '.' << std::string(digits - f.size(), '0') << f;
    }
    return os.str();
}

Poly::Poly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

void Poly::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Poly Poly::constant(const Rational& c) { return Poly(std::vector<Rational>{c}); }
Poly Poly::x() { return Poly(std::vector<Rational>{0, 1}); }

Poly Poly::operator+(const Poly& o) const {
    std::vector<Rational> r(std::max(c_.size(), o.c_.size()), Rational(0));
    for (size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
    for (size_t i = 0; i < o.c_.size(); ++i) r[i] += o.c_[i];
    return Poly(std::move(r));
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::operator-() const {
    std::vector<Rational> r(c_);
    for (auto& v : r) v = -v;
    return Poly(std::move(r));
}

Poly Poly::operator*(const Poly& o) const {
    if (is_zero() || o.is_zero()) return Poly();
    std::vector<Rational> r(c_.size() + o.c_.size() - 1, Rational(0));
    for (size_t i = 0; i < c_.size(); ++i)
        for (size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
    return Poly(std::move(r));
}

Poly Poly::operator*(const Rational& s) const {
    std::vector<Rational> r(c_);
    for (auto& v : r) v *= s;
    return Poly(std::move(r));
}

Rational Poly::eval(const Rational& x) const {
    Rational acc(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

Poly Poly::derivative() const {
    if (c_.size() <= 1) return Poly();
    std::vector<Rational> r(c_.size() - 1);
    for (size_t i = 1; i < c_.size(); ++i) r[i - 1] = c_[i] * Rational(static_cast<long>(i));
    return Poly(std::move(r));
}

std::pair<Poly, Poly> Poly::divmod(const Poly& d) const {
    if (d.is_zero()) throw Error(ErrorCode::BadInput, "polynomial division by zero");
    std::vector<Rational> rem(c_);
    int dd = d.degree();
    if (degree() < dd) return {Poly(), *this};
    std::vector<Rational> quo(degree() - dd + 1, Rational(0));
    for (int i = degree(); i >= dd; --i) {
        if (rem[i] == 0) continue;
        Rational f = rem[i] / d.leading();
        quo[i - dd] = f;
        for (int j = 0; j <= dd; ++j) rem[i - dd + j] -= f * d[j];
    }
    return {Poly(std::move(quo)), Poly(std::move(rem))};
}

Poly Poly::gcd(Poly a, Poly b) {
    while (!b.is_zero()) {
        Poly r = a.divmod(b).second;
        a = std::move(b);
        b = std::move(r);
    }
    if (a.is_zero()) return a;
    return a * (Rational(1) / a.leading());
}

Poly Poly::squarefree_part() const {
    if (is_zero()) return *this;
    if (degree() == 0) return Poly::constant(1);
    Poly g = gcd(*this, derivative());
    Poly sf = divmod(g).first;
    return sf.primitive_integer();
}

Poly Poly::primitive_integer() const {
    if (is_zero()) return *this;
    Int den_lcm = 1;
    for (const auto& c : c_) den_lcm = lcm(den_lcm, denominator(c));
    Int content = 0;
    std::vector<Rational> r(c_.size());
    for (size_t i = 0; i < c_.size(); ++i) {
        Int v = numerator(c_[i]) * (den_lcm / denominator(c_[i]));
        r[i] = Rational(v);
        content = boost::multiprecision::gcd(content, boost::multiprecision::abs(v));
    }
    if (content == 0) content = 1;
    if (r.back() < 0) content = -content;
    for (auto& v : r) v /= Rational(content);
    return Poly(std::move(r));
}

bool Poly::has_integer_coeffs() const {
    for (const auto& c : c_)
        if (denominator(c) != 1) return false;
    return true;
}

std::vector<Int> Poly::integer_coeffs() const {
    std::vector<Int> r;
    r.reserve(c_.size());
    for (const auto& c : c_) {
        if (denominator(c) != 1) throw Error(ErrorCode::BadInput, "non-integer coefficient");
        r.push_back(numerator(c));
    }
    return r;
}

Sign Poly::sign_at(const Rational& x) const { return betaflow::sign_of(eval(x)); }

std::string Poly::to_string(const std::string& var) const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = degree(); i >= 0; --i) {
        const Rational& c = c_[i];
        if (c == 0) continue;
        Rational a = rat_abs(c);
        if (first) {
            if (c < 0) os << '-';
            first = false;
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        bool unit = (a == 1) && i > 0;
        if (!unit) os << a;
        if (i > 0) {
            if (!unit) os << '*';
            os << var;
            if (i > 1) os << '^' << i;
        }
    }
    return os.str();
}

SturmSequence::SturmSequence(const Poly& p) {
    seq_.push_back(p);
    seq_.push_back(p.derivative());
    while (!seq_.back().is_zero() && seq_.back().degree() > 0) {
        Poly r = seq_[seq_.size() - 2].divmod(seq_.back()).second;
        if (r.is_zero()) break;
        seq_.push_back(-r);
    }
}

int SturmSequence::variations_at(const Rational& x) const {
    int var = 0;
    Sign prev = Sign::Zero;
    for (const auto& p : seq_) {
        Sign s = p.sign_at(x);
        if (s == Sign::Zero) continue;
        if (prev != Sign::Zero && s != prev) ++var;
        prev = s;
    }
    return var;
}

int SturmSequence::count_roots(const Rational& lo, const Rational& hi) const {
    return variations_at(lo) - variations_at(hi);
}

Rational root_bound(const Poly& p) {
    if (p.is_zero() || p.degree() == 0) return Rational(1);
    Rational lead = rat_abs(p.leading());
    Rational m(0);
    for (int i = 0; i < p.degree(); ++i) m = std::max(m, rat_abs(p[i]) / lead);
    return m + 1;
}

namespace {

// Rational roots of an integer-primitive polynomial, via the rational root
// theorem.  Always probes tiny integer candidates; runs the full divisor
// search only for small coefficients.
std::vector<Rational> rational_roots(const Poly& q0) {
    Poly q = q0.primitive_integer();
    std::vector<Rational> found;
    if (q.degree() < 1) return found;
    auto try_candidate = [&](const Rational& cand) {
        if (q.eval(cand) == 0) {
            found.push_back(cand);
            Poly lin(std::vector<Rational>{-cand, 1});
            q = q.divmod(lin).first;
            return true;
        }
        return false;
    };
    while (q.degree() >= 1 && q[0] == 0) try_candidate(Rational(0));
    for (long c : {1, -1, 2, -2})
        while (q.degree() >= 1 && try_candidate(Rational(c))) {}
    if (q.degree() >= 1) {
        Int c0 = numerator(q[0]), lead = numerator(q.leading());
        if (boost::multiprecision::abs(c0) <= 100000 && boost::multiprecision::abs(lead) <= 100000) {
            auto divisors = [](Int n) {
                n = boost::multiprecision::abs(n);
                std::vector<Int> d;
                for (Int i = 1; i * i <= n; ++i)
                    if (n % i == 0) { d.push_back(i); d.push_back(n / i); }
                return d;
            };
            for (const Int& r : divisors(c0))
                for (const Int& s : divisors(lead))
                    for (int sgn : {1, -1})
                        while (q.degree() >= 1 && try_candidate(Rational(r * sgn, s))) {}
        }
    }
    return found;
}

}  // namespace

std::vector<IsolatedRoot> isolate_real_roots(const Poly& p, const Rational& lo, const Rational& hi) {
    std::vector<IsolatedRoot> out;
    if (p.is_zero()) throw Error(ErrorCode::BadInput, "cannot isolate roots of the zero polynomial");
    if (!(lo < hi)) return out;
    Poly sf = p.squarefree_part();
    if (sf.degree() < 1) return out;

    auto divide_out = [](Poly& q, const Rational& r) {
        Poly lin(std::vector<Rational>{-r, 1});
        q = q.divmod(lin).first;
    };

    // Split off rational roots first: they come back as exact linear
    // factors with root-free neighbourhoods around them.
    std::vector<Rational> ratroots;
    for (const Rational& r : rational_roots(sf)) {
        divide_out(sf, r);
        if (lo < r && r < hi) ratroots.push_back(r);
    }
    std::sort(ratroots.begin(), ratroots.end());
    for (size_t i = 0; i < ratroots.size(); ++i) {
        const Rational& r = ratroots[i];
        Rational d = std::min(r - lo, hi - r) / 2;
        if (i > 0) d = std::min(d, Rational((r - ratroots[i - 1]) / 4));
        if (i + 1 < ratroots.size()) d = std::min(d, Rational((ratroots[i + 1] - r) / 4));
        if (sf.degree() >= 1) {
            SturmSequence stq(sf);
            while (sf.sign_at(r - d) == Sign::Zero || sf.sign_at(r + d) == Sign::Zero ||
                   stq.count_roots(r - d, r + d) != 0)
                d /= 2;
        }
        Poly lin(std::vector<Rational>{-r, 1});
        out.push_back({lin.primitive_integer(), r - d, r + d});
    }
    if (sf.degree() < 1) {
        std::sort(out.begin(), out.end(), [](const IsolatedRoot& a, const IsolatedRoot& b) { return a.lo < b.lo; });
        return out;
    }

    // Roots exactly at the open interval's endpoints are excluded; divide
    // them out so Sturm counting sees non-root endpoints.
    while (sf.degree() >= 1 && sf.sign_at(lo) == Sign::Zero) divide_out(sf, lo);
    while (sf.degree() >= 1 && sf.sign_at(hi) == Sign::Zero) divide_out(sf, hi);
    if (sf.degree() < 1) {
        std::sort(out.begin(), out.end(), [](const IsolatedRoot& a, const IsolatedRoot& b) { return a.lo < b.lo; });
        return out;
    }

    // When a probe point turns out to be a rational root, record it with a
    // root-free neighbourhood and continue with the cofactor.
    auto isolate_rational_root = [&](Poly& q, const Rational& r, const Rational& a, const Rational& b) {
        divide_out(q, r);
        Rational d = std::min(r - a, b - r) / 2;
        if (q.degree() >= 1) {
            SturmSequence stq(q);
            while (q.sign_at(r - d) == Sign::Zero || q.sign_at(r + d) == Sign::Zero ||
                   stq.count_roots(r - d, r + d) != 0)
                d /= 2;
        }
        Poly lin(std::vector<Rational>{-r, 1});
        out.push_back({lin, r - d, r + d});
        return d;
    };

    struct Frame { Rational a, b; };
    std::vector<Frame> stack{{lo, hi}};
    while (!stack.empty()) {
        Frame f = stack.back();
        stack.pop_back();
        if (sf.degree() < 1) break;
        SturmSequence st(sf);
        int n = st.count_roots(f.a, f.b);
        if (n == 0) continue;
        if (n == 1) {
            out.push_back({sf, f.a, f.b});
            continue;
        }
        Rational mid = (f.a + f.b) / 2;
        if (sf.sign_at(mid) == Sign::Zero) {
            Rational d = isolate_rational_root(sf, mid, f.a, f.b);
            stack.push_back({f.a, mid - d});
            stack.push_back({mid + d, f.b});
            continue;
        }
        stack.push_back({f.a, mid});
        stack.push_back({mid, f.b});
    }
    // Keep isolating intervals pairwise disjoint so sorting by endpoint
    // orders the roots themselves.
    for (auto& r : out) {
        if (r.squarefree.degree() == 1) continue;
        SturmSequence st(r.squarefree);
        for (const Rational& q : ratroots) {
            while (r.lo < q && q < r.hi) {
                Rational mid = (r.lo + r.hi) / 2;
                if (st.count_roots(r.lo, mid) == 1) r.hi = mid; else r.lo = mid;
            }
        }
    }
    std::sort(out.begin(), out.end(), [](const IsolatedRoot& a, const IsolatedRoot& b) { return a.lo < b.lo; });
    return out;
}

Poly strip_rational_roots(const Poly& p) {
    Poly q = p.primitive_integer();
    if (q.degree() < 1) return q;
    bool changed = true;
    while (changed && q.degree() > 1) {
        changed = false;
        // Candidate rational roots r/s: r | constant term, s | leading.
        Int c0 = numerator(q[0]);
        if (c0 == 0) {
            q = q.divmod(Poly::x()).first;
            changed = true;
            continue;
        }
        Int lead = numerator(q.leading());
        std::vector<Int> rs, ss;
        auto divisors = [](Int n) {
            n = boost::multiprecision::abs(n);
            std::vector<Int> d;
            for (Int i = 1; i * i <= n; ++i)
                if (n % i == 0) { d.push_back(i); d.push_back(n / i); }
            return d;
        };
        // Keep the candidate set small: bail out on huge coefficient sets.
        if (boost::multiprecision::abs(c0) > 100000 || boost::multiprecision::abs(lead) > 100000) break;
        for (const Int& r : divisors(c0))
            for (const Int& s : divisors(lead))
                for (int sgn : {1, -1}) {
                    Rational cand(r * sgn, s);
                    if (q.eval(cand) == 0) {
                        Poly lin(std::vector<Rational>{-cand, 1});
                        q = q.divmod(lin).first;
                        changed = true;
                        goto next_iter;
                    }
                }
        next_iter:;
    }
    return q.primitive_integer();
}

}  // namespace betaflow
