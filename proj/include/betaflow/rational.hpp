#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace betaflow {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Error codes shared across the library.  Errors that callers are expected
// to branch on are thrown as Error with one of these codes.
enum class ErrorCode {
    UndecidableAtPrecision,
    NoRoot,
    NoPeriodWithinBudget,
    NotAdmissible,
    NotSft,
    MarkovViolation,
    RoundtripMismatch,
    TargetOutOfRange,
    SearchExhausted,
    EPlusSearchExhausted,
    NotTransitive,
    MixedGenerators,
    MissingFixture,
    BadInput,
};

class Error : public std::runtime_error {
  public:
    Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
    ErrorCode code() const { return code_; }

  private:
    ErrorCode code_;
};

inline const char* error_code_name(ErrorCode c) {
    switch (c) {
        case ErrorCode::UndecidableAtPrecision: return "UNDECIDABLE-AT-PRECISION";
        case ErrorCode::NoRoot: return "NO-ROOT";
        case ErrorCode::NoPeriodWithinBudget: return "NO-PERIOD-WITHIN-BUDGET";
        case ErrorCode::NotAdmissible: return "NOT-ADMISSIBLE";
        case ErrorCode::NotSft: return "NOT-SFT";
        case ErrorCode::MarkovViolation: return "MARKOV-VIOLATION";
        case ErrorCode::RoundtripMismatch: return "ROUNDTRIP-MISMATCH";
        case ErrorCode::TargetOutOfRange: return "TARGET-OUT-OF-RANGE";
        case ErrorCode::SearchExhausted: return "SEARCH-EXHAUSTED";
        case ErrorCode::EPlusSearchExhausted: return "E-PLUS-SEARCH-EXHAUSTED";
        case ErrorCode::NotTransitive: return "NOT-TRANSITIVE";
        case ErrorCode::MixedGenerators: return "MIXED-GENERATORS";
        case ErrorCode::MissingFixture: return "MISSING-FIXTURE";
        case ErrorCode::BadInput: return "BAD-INPUT";
    }
    return "UNKNOWN";
}

enum class Sign { Negative = -1, Zero = 0, Positive = 1 };

inline Sign sign_of(const Rational& r) {
    int s = r.sign();
    return s < 0 ? Sign::Negative : (s > 0 ? Sign::Positive : Sign::Zero);
}

inline Rational rat_abs(const Rational& r) { return r < 0 ? Rational(-r) : r; }

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

// 2^-k as a Rational.
inline Rational pow2neg(unsigned k) {
    Int d = Int(1) << k;
    return Rational(1, d);
}

// Largest integer n with 2^n <= |r|, for r != 0.
inline long floor_log2_abs(const Rational& r) {
    if (r == 0) throw Error(ErrorCode::BadInput, "floor_log2_abs of zero");
    Int num = boost::multiprecision::abs(numerator(r));
    Int den = denominator(r);
    long bits = static_cast<long>(msb(num)) - static_cast<long>(msb(den));
    // msb gives floor(log2); correct the off-by-one from the division.
    Rational probe = Rational(Int(1) << std::abs(bits), 1);
    if (bits < 0) probe = Rational(1, Int(1) << (-bits));
    Rational a = rat_abs(r);
    if (probe <= a) {
        while (probe * 2 <= a) { probe *= 2; ++bits; }
    } else {
        while (probe > a) { probe /= 2; --bits; }
    }
    return bits;
}

std::string rational_to_decimal(const Rational& r, int digits);

}  // namespace betaflow
