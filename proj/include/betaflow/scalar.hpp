#pragma once

#include "betaflow/numberfield.hpp"

#include <variant>

namespace betaflow {

// Directed-rounding interval number on the dyadic grid 2^-prec: the float
// backend.  Every operation rounds outward, so the interval always
// encloses the true value; comparisons that cannot be decided raise
// UNDECIDABLE-AT-PRECISION instead of guessing.
class DyadicInterval {
  public:
    DyadicInterval() : lo_(0), hi_(0), prec_(default_precision()) {}
    DyadicInterval(const Rational& v, unsigned prec) : lo_(v), hi_(v), prec_(prec) { round_outward(); }
    DyadicInterval(const Rational& lo, const Rational& hi, unsigned prec) : lo_(lo), hi_(hi), prec_(prec) {
        round_outward();
    }

    static unsigned default_precision();
    static void set_default_precision(unsigned bits);

    const Rational& lo() const { return lo_; }
    const Rational& hi() const { return hi_; }
    unsigned precision() const { return prec_; }
    Rational midpoint() const { return (lo_ + hi_) / 2; }
    Rational width() const { return hi_ - lo_; }
    double to_double() const { return betaflow::to_double(midpoint()); }

    DyadicInterval operator+(const DyadicInterval& o) const;
    DyadicInterval operator-(const DyadicInterval& o) const;
    DyadicInterval operator*(const DyadicInterval& o) const;
    DyadicInterval operator/(const DyadicInterval& o) const;
    DyadicInterval operator-() const;

    // Sign of the enclosed value; throws when the interval straddles zero
    // with positive width.
    Sign sign() const;

  private:
    void round_outward();
    Rational lo_, hi_;
    unsigned prec_;
};

struct NFElem {
    FieldPtr field;
    Poly rep;
};

// Tagged numeric value: exact rational, element of a number field, or a
// dyadic float interval.  Exact variants support exact sign determination.
class Scalar {
  public:
    Scalar() : v_(Rational(0)) {}
    Scalar(const Rational& r) : v_(r) {}
    Scalar(long n) : v_(Rational(n)) {}
    Scalar(int n) : v_(Rational(n)) {}
    Scalar(NFElem e);
    Scalar(DyadicInterval f) : v_(std::move(f)) {}

    // Wraps an algebraic number as the generator of a fresh field.
    static Scalar algebraic(const AlgebraicReal& a);
    static Scalar generator_of(const FieldPtr& f);

    bool is_exact() const { return !std::holds_alternative<DyadicInterval>(v_); }
    bool is_rational() const;
    bool is_float() const { return std::holds_alternative<DyadicInterval>(v_); }
    Rational rational_value() const;
    const NFElem* field_elem() const { return std::get_if<NFElem>(&v_); }
    const DyadicInterval* float_value() const { return std::get_if<DyadicInterval>(&v_); }

    Scalar operator+(const Scalar& o) const;
    Scalar operator-(const Scalar& o) const;
    Scalar operator*(const Scalar& o) const;
    Scalar operator/(const Scalar& o) const;
    Scalar operator-() const;

    Sign sign() const;
    bool operator==(const Scalar& o) const { return (*this - o).sign() == Sign::Zero; }
    bool operator<(const Scalar& o) const { return (*this - o).sign() == Sign::Negative; }
    bool operator<=(const Scalar& o) const { return (*this - o).sign() != Sign::Positive; }
    bool operator>(const Scalar& o) const { return o < *this; }
    bool operator>=(const Scalar& o) const { return o <= *this; }

    double to_double() const;
    // Encloses the value within width 2^-bits.
    std::pair<Rational, Rational> enclose(unsigned bits) const;
    DyadicInterval to_dyadic(unsigned prec) const;

    std::string to_string() const;
    std::string to_decimal(int digits) const;

  private:
    std::variant<Rational, NFElem, DyadicInterval> v_;
};

inline Sign sign_of(const Scalar& s) { return s.sign(); }

}  // namespace betaflow
