#pragma once

#include "betaflow/rational.hpp"

#include <vector>

namespace betaflow {

// Dense univariate polynomials with rational coefficients, constant term
// first.  Normalized so the leading coefficient is nonzero (the zero
// polynomial is the empty vector).
class Poly {
  public:
    Poly() = default;
    explicit Poly(std::vector<Rational> coeffs);
    static Poly constant(const Rational& c);
    static Poly x();
    // Parses an integer/rational coefficient list, constant term first.
    static Poly from_coeff_list(const std::vector<Rational>& coeffs) { return Poly(std::vector<Rational>(coeffs)); }

    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    const Rational& operator[](size_t i) const { return c_[i]; }
    const std::vector<Rational>& coeffs() const { return c_; }
    const Rational& leading() const { return c_.back(); }

    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator-() const;
    Poly operator*(const Poly& o) const;
    Poly operator*(const Rational& s) const;
    bool operator==(const Poly& o) const { return c_ == o.c_; }

    Rational eval(const Rational& x) const;
    Poly derivative() const;

    // Quotient and remainder of division by d (d nonzero).
    std::pair<Poly, Poly> divmod(const Poly& d) const;
    // Monic gcd.
    static Poly gcd(Poly a, Poly b);

    // this / gcd(this, this'), normalized to integer primitive form.
    Poly squarefree_part() const;

    // Scales to integer coefficients with content 1 and positive leading
    // coefficient.
    Poly primitive_integer() const;
    bool has_integer_coeffs() const;
    std::vector<Int> integer_coeffs() const;

    // Sign of the polynomial at a rational point.
    Sign sign_at(const Rational& x) const;

    std::string to_string(const std::string& var = "x") const;

  private:
    void trim();
    std::vector<Rational> c_;
};

// Sturm sequence of a squarefree polynomial; counts real roots exactly.
class SturmSequence {
  public:
    explicit SturmSequence(const Poly& squarefree);
    // Number of sign changes of the sequence at x.
    int variations_at(const Rational& x) const;
    // Number of roots in the half-open interval (lo, hi].
    int count_roots(const Rational& lo, const Rational& hi) const;

  private:
    std::vector<Poly> seq_;
};

// All real roots of p (any nonzero p; squarefree part is taken internally)
// in the open interval (lo, hi), as disjoint isolating intervals with a
// guaranteed sign change of the squarefree part, sorted increasingly.
struct IsolatedRoot {
    Poly squarefree;   // defining squarefree polynomial (integer primitive)
    Rational lo, hi;   // open isolating interval, sign change across it
};
std::vector<IsolatedRoot> isolate_real_roots(const Poly& p, const Rational& lo, const Rational& hi);

// Cauchy-style bound: all real roots of p lie in (-B, B).
Rational root_bound(const Poly& p);

// Strips rational linear factors (x - r) from p, returning the remaining
// factor; used to report tighter defining polynomials.
Poly strip_rational_roots(const Poly& p);

}  // namespace betaflow
