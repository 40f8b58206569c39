#pragma once

#include "betaflow/polynomial.hpp"

namespace betaflow {

// A real algebraic number: an integer-coefficient squarefree defining
// polynomial together with an isolating rational interval containing
// exactly one of its real roots (witnessed by a sign change).  Values are
// immutable; refinement returns a new value for the same root.
class AlgebraicReal {
  public:
    // `defining` need not be irreducible; its squarefree part is taken and
    // the interval must isolate a single root with a sign change.
    AlgebraicReal(const Poly& defining, const Rational& lo, const Rational& hi);
    static AlgebraicReal from_rational(const Rational& r);

    const Poly& defining_poly() const { return poly_; }
    const Rational& lo() const { return lo_; }
    const Rational& hi() const { return hi_; }
    Rational width() const { return hi_ - lo_; }
    Rational midpoint() const { return (lo_ + hi_) / 2; }

    bool is_rational() const { return poly_.degree() == 1; }
    Rational rational_value() const;

    // Same root, isolating interval of width <= w.
    AlgebraicReal refined(const Rational& w) const;
    double to_double() const;

    // Exact order of this root against a rational point.
    Sign compare(const Rational& q) const;
    // Exact equality / order of two algebraic reals.
    static bool equal(const AlgebraicReal& a, const AlgebraicReal& b);
    static int compare(const AlgebraicReal& a, const AlgebraicReal& b);

    std::string to_string() const;

  private:
    Poly poly_;  // squarefree, integer primitive
    Rational lo_, hi_;
    void bisect_once();
};

// Largest real root of p in the open interval (lo, hi).
// Throws NO-ROOT when p has no real root there.
AlgebraicReal max_real_root_in(const Poly& p, const Rational& lo, const Rational& hi);

inline AlgebraicReal refine(const AlgebraicReal& x, const Rational& width) { return x.refined(width); }

}  // namespace betaflow
