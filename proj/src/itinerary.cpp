#include "betaflow/itinerary.hpp"

#include <map>

namespace betaflow {

namespace {

// Stable exact key for revisit detection; only valid while the underlying
// field's modulus is unchanged, which holds along an orbit (no divisions).
std::vector<Rational> orbit_key(const Scalar& x) {
    if (x.is_rational()) return {x.rational_value()};
    if (const NFElem* e = x.field_elem()) {
        Poly r = e->field->reduce(e->rep);
        std::vector<Rational> key = r.coeffs();
        key.push_back(Rational(-1));  // tag separating field elements from rationals
        return key;
    }
    throw Error(ErrorCode::BadInput, "float scalars have no exact orbit key");
}

}  // namespace

Params::Params(Scalar beta_, Scalar alpha_) : beta(std::move(beta_)), alpha(std::move(alpha_)), p(0) {
    if ((beta <= Scalar(1)) || (beta >= Scalar(2)))
        throw Error(ErrorCode::BadInput, "beta must lie in (1,2)");
    if (alpha.sign() == Sign::Negative || (Scalar(2) - beta - alpha).sign() == Sign::Negative)
        throw Error(ErrorCode::BadInput, "alpha must lie in [0, 2-beta]");
    p = (Scalar(1) - alpha) / beta;
}

Scalar critical_point(const Params& params) { return params.p; }

uint8_t branch_letter(const Params& params, const Scalar& x, Variant variant) {
    Sign s = (x - params.p).sign();
    if (variant == Variant::Upper) return s == Sign::Negative ? 0 : 1;
    return s != Sign::Positive ? 0 : 1;
}

Scalar apply_map(const Params& params, const Scalar& x, Variant variant) {
    uint8_t digit = branch_letter(params, x, variant);
    return params.beta * x + params.alpha - Scalar(static_cast<long>(digit));
}

Orbit compute_orbit(const Params& params, const Scalar& x, Variant variant, size_t max_steps) {
    Orbit orb;
    orb.start = x;
    orb.variant = variant;
    bool exact = x.is_exact() && params.exact();
    std::map<std::vector<Rational>, size_t> seen;
    Scalar cur = x;
    for (size_t n = 0; n < max_steps; ++n) {
        if (exact) {
            auto key = orbit_key(cur);
            auto [it, inserted] = seen.emplace(std::move(key), n);
            if (!inserted) {
                orb.cycle = std::make_pair(it->second, n - it->second);
                return orb;
            }
        }
        orb.points.push_back(cur);
        orb.letters.push_back(branch_letter(params, cur, variant));
        cur = params.beta * cur + params.alpha - Scalar(static_cast<long>(orb.letters[n]));
    }
    return orb;
}

Expansion expansion(const Params& params, const Scalar& x, Variant variant, size_t max_steps) {
    Orbit orb = compute_orbit(params, x, variant, max_steps);
    Expansion out;
    out.prefix = orb.letters;
    if (orb.cycle) {
        auto [entry, len] = *orb.cycle;
        FiniteWord pre = orb.letters.subword(0, entry);
        FiniteWord per = orb.letters.subword(entry, len);
        out.word = EPWord(pre, per);
        return out;
    }
    // Uncertified: look for a repeating tail in the computed prefix.
    const size_t n = out.prefix.size();
    for (size_t q = 1; q * 4 <= n; ++q) {
        size_t start = n / 2;
        bool ok = true;
        for (size_t i = start; i + q < n && ok; ++i) ok = out.prefix[i] == out.prefix[i + q];
        if (ok) {
            size_t pre = start;
            while (pre > 0 && out.prefix[pre - 1] == out.prefix[pre - 1 + q]) --pre;
            out.probable_period = std::make_pair(pre, q);
            break;
        }
    }
    return out;
}

Scalar project_pi_prefix(const Params& params, const FiniteWord& w) {
    Scalar invb = Scalar(1) / params.beta;
    Scalar sum(0), pw(1);
    for (size_t k = 0; k < w.size(); ++k) {
        pw = pw * invb;
        if (w[k]) sum = sum + pw;
    }
    return params.alpha / (Scalar(1) - params.beta) + sum;
}

Scalar project_pi(const Params& params, const EPWord& w) {
    Scalar invb = Scalar(1) / params.beta;
    const size_t P = w.preperiod().size(), Q = w.period().size();
    Scalar head(0), pw(1);
    for (size_t k = 0; k < P; ++k) {
        pw = pw * invb;
        if (w.preperiod()[k]) head = head + pw;
    }
    Scalar invbP = pw;  // beta^-P
    Scalar body(0);
    pw = Scalar(1);
    for (size_t k = 0; k < Q; ++k) {
        pw = pw * invb;
        if (w.period()[k]) body = body + pw;
    }
    Scalar invbQ = pw;  // beta^-Q
    Scalar tail = invbP * body / (Scalar(1) - invbQ);
    return params.alpha / (Scalar(1) - params.beta) + head + tail;
}

}  // namespace betaflow
