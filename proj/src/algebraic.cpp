#include "betaflow/algebraic.hpp"

#include <sstream>

namespace betaflow {

AlgebraicReal::AlgebraicReal(const Poly& defining, const Rational& lo, const Rational& hi) : lo_(lo), hi_(hi) {
    if (!(lo < hi)) throw Error(ErrorCode::BadInput, "empty isolating interval");
    poly_ = defining.squarefree_part();
    if (poly_.degree() < 1) throw Error(ErrorCode::BadInput, "constant defining polynomial");
    Sign sl = poly_.sign_at(lo_), sh = poly_.sign_at(hi_);
    if (sl != Sign::Zero && sh != Sign::Zero && sl != sh) {
        SturmSequence st(poly_);
        if (st.count_roots(lo_, hi_) == 1) return;
    }
    // Re-isolate inside the given interval; exactly one root expected.
    auto roots = isolate_real_roots(poly_, lo_, hi_);
    if (roots.size() != 1) throw Error(ErrorCode::BadInput, "interval does not isolate a unique root");
    poly_ = roots[0].squarefree;
    lo_ = roots[0].lo;
    hi_ = roots[0].hi;
}

AlgebraicReal AlgebraicReal::from_rational(const Rational& r) {
    Poly lin(std::vector<Rational>{-r, 1});
    return AlgebraicReal(lin, r - 1, r + 1);
}

Rational AlgebraicReal::rational_value() const {
    if (!is_rational()) throw Error(ErrorCode::BadInput, "not a rational value");
    return -poly_[0] / poly_[1];
}

void AlgebraicReal::bisect_once() {
    Rational mid = (lo_ + hi_) / 2;
    Sign sm = poly_.sign_at(mid);
    if (sm == Sign::Zero) {
        // The root is exactly mid; snap to a linear defining polynomial.
        poly_ = Poly(std::vector<Rational>{-mid, 1}).primitive_integer();
        Rational w = (hi_ - lo_) / 4;
        lo_ = mid - w;
        hi_ = mid + w;
        return;
    }
    if (sm == poly_.sign_at(lo_)) lo_ = mid; else hi_ = mid;
}

AlgebraicReal AlgebraicReal::refined(const Rational& w) const {
    if (w <= 0) throw Error(ErrorCode::BadInput, "refinement width must be positive");
    AlgebraicReal r(*this);
    while (r.width() > w) r.bisect_once();
    return r;
}

double AlgebraicReal::to_double() const {
    AlgebraicReal r = refined(Rational(1, Int(1) << 80));
    return betaflow::to_double(r.midpoint());
}

Sign AlgebraicReal::compare(const Rational& q) const {
    // Interval endpoints are never roots of poly_ (constructor invariant),
    // so a point outside the open interval is strictly ordered.
    if (q <= lo_) return Sign::Positive;
    if (q >= hi_) return Sign::Negative;
    Sign sq = poly_.sign_at(q);
    if (sq == Sign::Zero) return Sign::Zero;
    return sq == poly_.sign_at(lo_) ? Sign::Positive : Sign::Negative;
}

bool AlgebraicReal::equal(const AlgebraicReal& a, const AlgebraicReal& b) { return compare(a, b) == 0; }

int AlgebraicReal::compare(const AlgebraicReal& a, const AlgebraicReal& b) {
    AlgebraicReal x = a, y = b;
    // If the defining polynomials share no factor the numbers differ and
    // bisection separates them; otherwise equality shows as a root of the
    // gcd inside the (shrinking) overlap.
    Poly g = Poly::gcd(x.poly_, y.poly_);
    bool maybe_equal = g.degree() >= 1;
    for (int iter = 0; iter < 4096; ++iter) {
        if (x.hi_ <= y.lo_) return -1;
        if (y.hi_ <= x.lo_) return 1;
        if (maybe_equal) {
            Rational lo = std::max(x.lo_, y.lo_), hi = std::min(x.hi_, y.hi_);
            SturmSequence st(g.squarefree_part());
            if (st.count_roots(lo, hi) >= 1) return 0;
            maybe_equal = false;
        }
        x.bisect_once();
        y.bisect_once();
    }
    throw Error(ErrorCode::UndecidableAtPrecision, "algebraic comparison did not separate");
}

std::string AlgebraicReal::to_string() const {
    std::ostringstream os;
    os << poly_.to_string() << " in (" << lo_ << ", " << hi_ << ")";
    return os.str();
}

AlgebraicReal max_real_root_in(const Poly& p, const Rational& lo, const Rational& hi) {
    auto roots = isolate_real_roots(p, lo, hi);
    if (roots.empty()) throw Error(ErrorCode::NoRoot, "no real root in the interval");
    const IsolatedRoot& r = roots.back();
    return AlgebraicReal(r.squarefree, r.lo, r.hi);
}

}  // namespace betaflow
