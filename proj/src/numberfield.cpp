#include "betaflow/numberfield.hpp"

namespace betaflow {

namespace {

// Extended Euclid over Q[x]: returns (g, s) with s*a == g (mod b).
std::pair<Poly, Poly> half_egcd(Poly a, Poly b) {
    Poly s0 = Poly::constant(1), s1;
    while (!b.is_zero()) {
        auto [q, r] = a.divmod(b);
        Poly s2 = s0 - q * s1;
        a = std::move(b);
        b = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s2);
    }
    return {a, s0};
}

std::pair<Rational, Rational> interval_mul(const std::pair<Rational, Rational>& a,
                                           const std::pair<Rational, Rational>& b) {
    Rational p1 = a.first * b.first, p2 = a.first * b.second, p3 = a.second * b.first, p4 = a.second * b.second;
    return {std::min(std::min(p1, p2), std::min(p3, p4)), std::max(std::max(p1, p2), std::max(p3, p4))};
}

}  // namespace

NumberField::NumberField(const AlgebraicReal& generator) : modulus_(generator.defining_poly()), gen_(generator) {}

Poly NumberField::modulus() const {
    std::lock_guard<std::mutex> lk(mu_);
    return modulus_;
}

AlgebraicReal NumberField::generator() const {
    std::lock_guard<std::mutex> lk(mu_);
    return gen_;
}

int NumberField::degree() const {
    std::lock_guard<std::mutex> lk(mu_);
    return modulus_.degree();
}

Poly NumberField::reduce_locked(const Poly& p) const { return p.divmod(modulus_).second; }

Poly NumberField::reduce(const Poly& p) const {
    std::lock_guard<std::mutex> lk(mu_);
    return reduce_locked(p);
}

Poly NumberField::mul(const Poly& a, const Poly& b) const {
    std::lock_guard<std::mutex> lk(mu_);
    return reduce_locked(a * b);
}

void NumberField::shrink_modulus_locked(const Poly& factor_with_root) const {
    Poly f = factor_with_root.squarefree_part();
    modulus_ = f;
    gen_ = AlgebraicReal(f, gen_.lo(), gen_.hi());
}

Poly NumberField::inverse(const Poly& a0) const {
    std::lock_guard<std::mutex> lk(mu_);
    Poly a = reduce_locked(a0);
    for (;;) {
        if (a.is_zero()) throw Error(ErrorCode::BadInput, "division by zero in number field");
        auto [g, s] = half_egcd(a, modulus_);
        if (g.degree() == 0) return reduce_locked(s * (Rational(1) / g[0]));
        // The gcd is a proper factor; decide on which side the generator
        // lives and either report a true zero divisor or shrink the modulus.
        SturmSequence st(g.squarefree_part());
        if (st.count_roots(gen_.lo(), gen_.hi()) >= 1) {
            // generator is a root of g, hence of a: a == 0 in the field
            throw Error(ErrorCode::BadInput, "division by zero in number field");
        }
        shrink_modulus_locked(modulus_.divmod(g).first);
        a = reduce_locked(a);
    }
}

std::pair<Rational, Rational> NumberField::interval_eval_locked(const Poly& a) const {
    std::pair<Rational, Rational> x{gen_.lo(), gen_.hi()};
    std::pair<Rational, Rational> acc{0, 0};
    if (a.is_zero()) return acc;
    for (int i = a.degree(); i >= 0; --i) {
        acc = interval_mul(acc, x);
        acc.first += a[i];
        acc.second += a[i];
    }
    return acc;
}

Sign NumberField::sign(const Poly& a0) const {
    std::lock_guard<std::mutex> lk(mu_);
    Poly a = reduce_locked(a0);
    if (a.is_zero()) return Sign::Zero;
    if (a.degree() == 0) return betaflow::sign_of(a[0]);
    // Cheap attempts first: interval evaluation at increasing precision.
    for (int round = 0; round < 3; ++round) {
        auto iv = interval_eval_locked(a);
        if (iv.first > 0) return Sign::Positive;
        if (iv.second < 0) return Sign::Negative;
        Rational w = gen_.width() / 64;
        while (gen_.width() > w) gen_ = gen_.refined(w);
    }
    // Still straddling zero: settle exact vanishing via the gcd.
    Poly g = Poly::gcd(a, modulus_);
    if (g.degree() >= 1) {
        SturmSequence st(g.squarefree_part());
        if (st.count_roots(gen_.lo(), gen_.hi()) >= 1) return Sign::Zero;
    }
    // Nonzero value: refinement must eventually separate.
    for (int round = 0; round < 4096; ++round) {
        auto iv = interval_eval_locked(a);
        if (iv.first > 0) return Sign::Positive;
        if (iv.second < 0) return Sign::Negative;
        gen_ = gen_.refined(gen_.width() / 16);
    }
    throw Error(ErrorCode::UndecidableAtPrecision, "field sign did not separate");
}

std::pair<Rational, Rational> NumberField::enclose(const Poly& a0, const Rational& w) const {
    std::lock_guard<std::mutex> lk(mu_);
    Poly a = reduce_locked(a0);
    for (;;) {
        auto iv = interval_eval_locked(a);
        if (iv.second - iv.first <= w) return iv;
        gen_ = gen_.refined(gen_.width() / 16);
    }
}

void NumberField::refine_generator(const Rational& width) const {
    std::lock_guard<std::mutex> lk(mu_);
    gen_ = gen_.refined(width);
}

}  // namespace betaflow
