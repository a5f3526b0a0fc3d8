#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdio>
#include <sstream>
#include <string>

namespace fsig {

// Exact arithmetic only. Invariants (e.g. bound == s(R) for the rational
// double points) are checked as rational equalities, never in floating point.
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline BigInt big_pow(const BigInt& base, unsigned exp) {
    return boost::multiprecision::pow(base, exp);
}

inline BigInt factorial(unsigned n) {
    BigInt r = 1;
    for (unsigned i = 2; i <= n; ++i) r *= i;
    return r;
}

// "num/den" in lowest terms; integers print without the "/den" part.
inline std::string to_string(const Rational& r) {
    std::ostringstream os;
    os << r;
    return os.str();
}

inline std::string to_string(const BigInt& n) {
    std::ostringstream os;
    os << n;
    return os.str();
}

// Decimal rendering for human scanning only; never used in any check.
inline std::string approx_string(const Rational& r, int digits = 6) {
    double v = r.convert_to<double>();
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*g", digits, v);
    return buf;
}

} // namespace fsig
