#include "betaflow/scalar.hpp"

#include <atomic>
#include <sstream>

namespace betaflow {

namespace {
std::atomic<unsigned> g_default_prec{64};

Rational round_down(const Rational& v, unsigned prec) {
    Int scale = Int(1) << prec;
    Int num = numerator(v) * scale;
    Int den = denominator(v);
    Int q = num / den;
    if (num < 0 && num % den != 0) q -= 1;
    return Rational(q, scale);
}

Rational round_up(const Rational& v, unsigned prec) {
    Int scale = Int(1) << prec;
    Int num = numerator(v) * scale;
    Int den = denominator(v);
    Int q = num / den;
    if (num > 0 && num % den != 0) q += 1;
    return Rational(q, scale);
}
}  // namespace

unsigned DyadicInterval::default_precision() { return g_default_prec.load(); }
void DyadicInterval::set_default_precision(unsigned bits) { g_default_prec.store(bits); }

void DyadicInterval::round_outward() {
    lo_ = round_down(lo_, prec_);
    hi_ = round_up(hi_, prec_);
}

DyadicInterval DyadicInterval::operator+(const DyadicInterval& o) const {
    return DyadicInterval(lo_ + o.lo_, hi_ + o.hi_, std::max(prec_, o.prec_));
}

DyadicInterval DyadicInterval::operator-(const DyadicInterval& o) const {
    return DyadicInterval(lo_ - o.hi_, hi_ - o.lo_, std::max(prec_, o.prec_));
}

DyadicInterval DyadicInterval::operator-() const { return DyadicInterval(-hi_, -lo_, prec_); }

DyadicInterval DyadicInterval::operator*(const DyadicInterval& o) const {
    Rational p1 = lo_ * o.lo_, p2 = lo_ * o.hi_, p3 = hi_ * o.lo_, p4 = hi_ * o.hi_;
    return DyadicInterval(std::min(std::min(p1, p2), std::min(p3, p4)),
                          std::max(std::max(p1, p2), std::max(p3, p4)), std::max(prec_, o.prec_));
}

DyadicInterval DyadicInterval::operator/(const DyadicInterval& o) const {
    if (o.lo_ <= 0 && o.hi_ >= 0)
        throw Error(ErrorCode::UndecidableAtPrecision, "interval division by an interval containing zero");
    Rational p1 = lo_ / o.lo_, p2 = lo_ / o.hi_, p3 = hi_ / o.lo_, p4 = hi_ / o.hi_;
    return DyadicInterval(std::min(std::min(p1, p2), std::min(p3, p4)),
                          std::max(std::max(p1, p2), std::max(p3, p4)), std::max(prec_, o.prec_));
}

Sign DyadicInterval::sign() const {
    if (lo_ > 0) return Sign::Positive;
    if (hi_ < 0) return Sign::Negative;
    if (lo_ == 0 && hi_ == 0) return Sign::Zero;
    throw Error(ErrorCode::UndecidableAtPrecision, "float value within its error bound of zero");
}

Scalar::Scalar(NFElem e) : v_(Rational(0)) {
    // Degenerate field elements collapse to rationals.
    Poly r = e.field->reduce(e.rep);
    if (r.is_zero()) {
        v_ = Rational(0);
    } else if (r.degree() == 0) {
        v_ = r[0];
    } else {
        e.rep = std::move(r);
        v_ = std::move(e);
    }
}

Scalar Scalar::algebraic(const AlgebraicReal& a) {
    if (a.is_rational()) return Scalar(a.rational_value());
    auto field = std::make_shared<NumberField>(a);
    return Scalar(NFElem{field, Poly::x()});
}

Scalar Scalar::generator_of(const FieldPtr& f) { return Scalar(NFElem{f, Poly::x()}); }

bool Scalar::is_rational() const { return std::holds_alternative<Rational>(v_); }

Rational Scalar::rational_value() const {
    if (!is_rational()) throw Error(ErrorCode::BadInput, "scalar is not rational");
    return std::get<Rational>(v_);
}

namespace {

// Reconciles two field elements onto one common field, shrinking moduli as
// needed.  Fails with MIXED-GENERATORS when the generators are unrelated.
std::pair<NFElem, NFElem> unify(const NFElem& a, const NFElem& b) {
    if (a.field == b.field) return {a, b};
    AlgebraicReal ga = a.field->generator(), gb = b.field->generator();
    if (!AlgebraicReal::equal(ga, gb))
        throw Error(ErrorCode::MixedGenerators, "arithmetic between distinct field generators");
    Poly ma = a.field->modulus(), mb = b.field->modulus();
    if (ma == mb) return {a, NFElem{a.field, b.rep}};
    Poly g = Poly::gcd(ma, mb).primitive_integer();
    if (g == ma) return {a, NFElem{a.field, a.field->reduce(b.rep)}};
    if (g == mb) return {NFElem{b.field, b.field->reduce(a.rep)}, b};
    AlgebraicReal gen(g, std::max(ga.lo(), gb.lo()), std::min(ga.hi(), gb.hi()));
    auto field = std::make_shared<NumberField>(gen);
    return {NFElem{field, field->reduce(a.rep)}, NFElem{field, field->reduce(b.rep)}};
}

}  // namespace

Scalar Scalar::operator+(const Scalar& o) const {
    if (is_float() || o.is_float()) {
        unsigned p = is_float() ? float_value()->precision() : o.float_value()->precision();
        return Scalar(to_dyadic(p) + o.to_dyadic(p));
    }
    if (is_rational() && o.is_rational()) return Scalar(rational_value() + o.rational_value());
    if (is_rational()) return o + *this;
    NFElem a = *field_elem();
    if (o.is_rational()) return Scalar(NFElem{a.field, a.rep + Poly::constant(o.rational_value())});
    try {
        auto [x, y] = unify(a, *o.field_elem());
        return Scalar(NFElem{x.field, x.rep + y.rep});
    } catch (const Error& e) {
        if (e.code() != ErrorCode::MixedGenerators) throw;
        unsigned p = std::max(DyadicInterval::default_precision(), 320u);
        return Scalar(to_dyadic(p) + o.to_dyadic(p));
    }
}

Scalar Scalar::operator-() const {
    if (is_float()) return Scalar(-*float_value());
    if (is_rational()) return Scalar(Rational(-rational_value()));
    NFElem a = *field_elem();
    return Scalar(NFElem{a.field, -a.rep});
}

Scalar Scalar::operator-(const Scalar& o) const { return *this + (-o); }

Scalar Scalar::operator*(const Scalar& o) const {
    if (is_float() || o.is_float()) {
        unsigned p = is_float() ? float_value()->precision() : o.float_value()->precision();
        return Scalar(to_dyadic(p) * o.to_dyadic(p));
    }
    if (is_rational() && o.is_rational()) return Scalar(rational_value() * o.rational_value());
    if (is_rational()) return o * *this;
    NFElem a = *field_elem();
    if (o.is_rational()) return Scalar(NFElem{a.field, a.rep * o.rational_value()});
    try {
        auto [x, y] = unify(a, *o.field_elem());
        return Scalar(NFElem{x.field, x.field->mul(x.rep, y.rep)});
    } catch (const Error& e) {
        if (e.code() != ErrorCode::MixedGenerators) throw;
        unsigned p = std::max(DyadicInterval::default_precision(), 320u);
        return Scalar(to_dyadic(p) * o.to_dyadic(p));
    }
}

Scalar Scalar::operator/(const Scalar& o) const {
    if (is_float() || o.is_float()) {
        unsigned p = is_float() ? float_value()->precision() : o.float_value()->precision();
        return Scalar(to_dyadic(p) / o.to_dyadic(p));
    }
    if (o.is_rational()) {
        if (o.rational_value() == 0) throw Error(ErrorCode::BadInput, "division by zero");
        return *this * Scalar(Rational(1) / o.rational_value());
    }
    NFElem d = *o.field_elem();
    Poly inv = d.field->inverse(d.rep);
    return *this * Scalar(NFElem{d.field, inv});
}

Sign Scalar::sign() const {
    if (is_rational()) return betaflow::sign_of(rational_value());
    if (is_float()) return float_value()->sign();
    const NFElem& e = *field_elem();
    return e.field->sign(e.rep);
}

std::pair<Rational, Rational> Scalar::enclose(unsigned bits) const {
    Rational w = pow2neg(bits);
    if (is_rational()) return {rational_value(), rational_value()};
    if (is_float()) {
        const auto& f = *float_value();
        return {f.lo(), f.hi()};
    }
    const NFElem& e = *field_elem();
    return e.field->enclose(e.rep, w);
}

DyadicInterval Scalar::to_dyadic(unsigned prec) const {
    if (is_float()) return *float_value();
    if (is_rational()) return DyadicInterval(rational_value(), prec);
    auto iv = enclose(prec + 2);
    return DyadicInterval(iv.first, iv.second, prec);
}

double Scalar::to_double() const {
    if (is_rational()) return betaflow::to_double(rational_value());
    if (is_float()) return float_value()->to_double();
    auto iv = enclose(80);
    return betaflow::to_double((iv.first + iv.second) / 2);
}

std::string Scalar::to_string() const {
    std::ostringstream os;
    if (is_rational()) {
        os << rational_value();
    } else if (is_float()) {
        os << "[" << float_value()->lo() << ", " << float_value()->hi() << "]@" << float_value()->precision();
    } else {
        os << field_elem()->rep.to_string("b") << " with " << field_elem()->field->generator().to_string();
    }
    return os.str();
}

std::string Scalar::to_decimal(int digits) const {
    if (is_rational()) return rational_to_decimal(rational_value(), digits);
    auto iv = enclose(static_cast<unsigned>(4 * (digits + 2)));
    return rational_to_decimal((iv.first + iv.second) / 2, digits);
}

}  // namespace betaflow
