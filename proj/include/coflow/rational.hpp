#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace coflow {

// Exact rational scalar, always reduced, denominator > 0.
using Rational = boost::multiprecision::cpp_rational;
using BigInt   = boost::multiprecision::cpp_int;

struct ScalarError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline bool is_integer(const Rational& r) { return denominator(r) == 1; }

inline double to_double(const Rational& r) { return r.template convert_to<double>(); }

inline Rational pow_int(const Rational& base, long e) {
    if (e == 0) return Rational(1);
    if (base == 0 && e < 0) throw ScalarError("pow_int: zero base with negative exponent");
    Rational acc(1);
    Rational b = e > 0 ? base : Rational(1) / base;
    for (long n = e > 0 ? e : -e; n > 0; --n) acc *= b;
    return acc;
}

// Renders as "p" or "p/q".
inline std::string to_string(const Rational& r) {
    std::string s = numerator(r).str();
    if (denominator(r) != 1) s += "/" + denominator(r).str();
    return s;
}

// Accepts "p", "p/q", optional leading sign; q > 0 after reduction.
inline Rational rational_from_string(const std::string& text) {
    auto slash = text.find('/');
    try {
        if (slash == std::string::npos) return Rational(BigInt(text));
        BigInt num(text.substr(0, slash));
        BigInt den(text.substr(slash + 1));
        if (den == 0) throw ScalarError("rational literal with zero denominator: " + text);
        return Rational(num, den);
    } catch (const std::exception&) {
        throw ScalarError("malformed rational literal: '" + text + "'");
    }
}

}  // namespace coflow
