#pragma once

#include "betaflow/algebraic.hpp"

#include <memory>
#include <mutex>

namespace betaflow {

// Arithmetic in Q(beta) for a single algebraic generator: elements are
// polynomials in the generator reduced modulo its defining polynomial.
// The defining polynomial need not be irreducible; whenever a gcd
// computation exposes a proper factor, the modulus shrinks to the factor
// that actually vanishes at the generator.  Shrinking preserves the value
// of every previously computed representative.
class NumberField : public std::enable_shared_from_this<NumberField> {
  public:
    explicit NumberField(const AlgebraicReal& generator);

    Poly modulus() const;
    AlgebraicReal generator() const;
    int degree() const;

    Poly reduce(const Poly& p) const;
    Poly mul(const Poly& a, const Poly& b) const;
    // Multiplicative inverse; throws BadInput on zero.
    Poly inverse(const Poly& a) const;
    // Exact sign of a(generator).
    Sign sign(const Poly& a) const;
    bool is_zero(const Poly& a) const { return sign(a) == Sign::Zero; }

    // Encloses a(generator) in an interval of width <= w.
    std::pair<Rational, Rational> enclose(const Poly& a, const Rational& w) const;

    void refine_generator(const Rational& width) const;

  private:
    // All mutation is monotone: the modulus only ever shrinks to a divisor
    // vanishing at the generator, the interval only tightens.
    mutable std::mutex mu_;
    mutable Poly modulus_;
    mutable AlgebraicReal gen_;

    Poly reduce_locked(const Poly& p) const;
    void shrink_modulus_locked(const Poly& factor_with_root) const;
    std::pair<Rational, Rational> interval_eval_locked(const Poly& a) const;
};

using FieldPtr = std::shared_ptr<NumberField>;

}  // namespace betaflow
