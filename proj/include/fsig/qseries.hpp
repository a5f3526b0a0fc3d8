#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "errors.hpp"
#include "rational.hpp"

namespace fsig {

// Poincaré series of a graded complete intersection, kept in the displayed
// shape: an expanded integer numerator over a list of (1 - t^k) factors.
// No simplification happens here; cancellation is done inside e_prime and
// artinian_reduction only.
struct RationalSeries {
    std::vector<BigInt> numerator;             // coefficient of t^i at index i
    std::vector<long long> numerator_factors;  // degrees d of the (1 - t^d) factors
    std::vector<long long> denom_factors;      // degrees k of the (1 - t^k) factors
};

// Graded dimensions of an Artinian quotient: r_0..r_s with r_0 = 1 and
// r_s >= 1. Gorenstein symmetry r_n = r_{s-n} is a checked property, not a
// construction invariant.
struct ArtinianProfile {
    std::vector<BigInt> coeffs;
    long long socle_degree = 0;

    BigInt total() const {
        BigInt t = 0;
        for (const BigInt& c : coeffs) t += c;
        return t;
    }
};

namespace detail {

inline std::vector<BigInt> multiply_factor(std::vector<BigInt> poly, long long k) {
    // poly *= (1 - t^k)
    std::vector<BigInt> out(poly.size() + static_cast<std::size_t>(k), 0);
    for (std::size_t i = 0; i < poly.size(); ++i) {
        out[i] += poly[i];
        out[i + static_cast<std::size_t>(k)] -= poly[i];
    }
    return out;
}

// Exact division by (1 - t^k); nullopt when not divisible. Divisibility is
// decided by residue-class sums (t^k = 1), then the quotient follows the
// recurrence q_i = a_i + q_{i-k}.
inline bool divide_factor(std::vector<BigInt>& poly, long long k) {
    std::size_t kk = static_cast<std::size_t>(k);
    if (poly.size() < kk) return false;
    for (std::size_t r = 0; r < kk; ++r) {
        BigInt s = 0;
        for (std::size_t i = r; i < poly.size(); i += kk) s += poly[i];
        if (s != 0) return false;
    }
    std::vector<BigInt> q(poly.size() - kk, 0);
    for (std::size_t i = 0; i < q.size(); ++i)
        q[i] = poly[i] + (i >= kk ? q[i - kk] : BigInt(0));
    poly = std::move(q);
    return true;
}

inline void trim(std::vector<BigInt>& poly) {
    while (!poly.empty() && poly.back() == 0) poly.pop_back();
}

} // namespace detail

// P(R,t) = prod_i (1 - t^{d_i}) / prod_j (1 - t^{w_j}) for the complete
// intersection with variable weights w_j and relation degrees d_i.
inline RationalSeries ci_series(const std::vector<long long>& weights,
                                const std::vector<long long>& rel_degrees) {
    if (weights.empty()) throw invalid_degrees_error("no variable weights");
    for (long long w : weights)
        if (w < 1) throw invalid_degrees_error("weights must be positive");
    for (long long d : rel_degrees)
        if (d < 1) throw invalid_degrees_error("relation degrees must be positive");
    if (rel_degrees.size() > weights.size())
        throw invalid_degrees_error("more relations than variables");
    RationalSeries s;
    s.numerator = {BigInt(1)};
    for (long long d : rel_degrees) s.numerator = detail::multiply_factor(std::move(s.numerator), d);
    s.numerator_factors = rel_degrees;
    s.denom_factors = weights;
    return s;
}

inline long long numerator_degree(const RationalSeries& s) {
    for (std::size_t i = s.numerator.size(); i-- > 0;)
        if (s.numerator[i] != 0) return static_cast<long long>(i);
    throw error("series numerator is zero");
}

// Degree of the series as a rational function: deg(numerator) - sum of
// denominator degrees. For a complete intersection this is sum d_i - sum w_j.
inline long long a_invariant(const RationalSeries& s) {
    long long denom = 0;
    for (long long k : s.denom_factors) denom += k;
    return numerator_degree(s) - denom;
}

// Same value obtained by iterating the quotient shift a -> a + b from the
// weighted polynomial ring, where a = -sum w_j. Kept as a separate route so
// the two can be cross-checked.
inline long long a_invariant_iterated(const std::vector<long long>& weights,
                                      const std::vector<long long>& rel_degrees) {
    long long a = 0;
    for (long long w : weights) a -= w;
    for (long long d : rel_degrees) a += d;
    return a;
}

// lim_{t->1} (1-t)^d P(R,t), exact. Each (1 - t^k) factor contributes one
// root at t = 1; the numerator's (1-t)-multiplicity is stripped first and the
// surviving factors are evaluated at 1.
inline Rational e_prime(const RationalSeries& s, int d) {
    std::vector<BigInt> num = s.numerator;
    detail::trim(num);
    if (num.empty()) throw error("series numerator is zero");
    long long mult = 0;
    for (;;) {
        BigInt at_one = 0;
        for (const BigInt& c : num) at_one += c;
        if (at_one != 0) break;
        // divide by (1 - t): prefix sums, dropping the top coefficient
        std::vector<BigInt> q(num.size() - 1, 0);
        BigInt run = 0;
        for (std::size_t i = 0; i + 1 < num.size(); ++i) {
            run += num[i];
            q[i] = run;
        }
        num = std::move(q);
        ++mult;
        if (num.empty()) throw error("series numerator is zero");
    }
    long long pole = static_cast<long long>(s.denom_factors.size()) - mult;
    if (pole != d) throw pole_order_mismatch_error(pole, d);
    BigInt value_at_one = 0;
    for (const BigInt& c : num) value_at_one += c;
    BigInt denom = 1;
    for (long long k : s.denom_factors) denom *= k;
    return Rational(value_at_one, denom);
}

// (-a)^d * eprime / (2^{d-1} d!), the closed-form ceiling for the splitting
// ratio a_q / q^d of a graded Gorenstein ring.
inline Rational signature_bound(long long a, int d, const Rational& eprime) {
    if (d < 1) throw invalid_degrees_error("dimension must be at least 1");
    BigInt neg_a = -a;
    Rational num(big_pow(neg_a, static_cast<unsigned>(d)), 1);
    Rational den(big_pow(BigInt(2), static_cast<unsigned>(d - 1)) *
                     factorial(static_cast<unsigned>(d)),
                 1);
    return num * eprime / den;
}

// Power-series coefficients H(0..N): numerator coefficients pushed through
// the recurrence c_n += c_{n-k} once per denominator factor.
inline std::vector<BigInt> hilbert_coeffs(const RationalSeries& s, long long N) {
    if (N < 0) throw invalid_degrees_error("negative truncation order");
    std::vector<BigInt> c(static_cast<std::size_t>(N) + 1, 0);
    for (std::size_t i = 0; i < c.size() && i < s.numerator.size(); ++i) c[i] = s.numerator[i];
    for (long long k : s.denom_factors)
        for (std::size_t n = static_cast<std::size_t>(k); n < c.size(); ++n)
            c[n] += c[n - static_cast<std::size_t>(k)];
    return c;
}

// Graded dimensions of the quotient by a homogeneous system of parameters of
// degrees param_degrees: the series times prod (1 - t^{c_i}) must collapse to
// a polynomial with nonnegative coefficients.
inline ArtinianProfile artinian_reduction(const RationalSeries& s,
                                          const std::vector<long long>& param_degrees) {
    for (long long c : param_degrees)
        if (c < 1) throw invalid_degrees_error("parameter degrees must be positive");
    std::vector<BigInt> poly = s.numerator;
    for (long long c : param_degrees) poly = detail::multiply_factor(std::move(poly), c);
    for (long long k : s.denom_factors)
        if (!detail::divide_factor(poly, k)) throw not_polynomial_error();
    detail::trim(poly);
    if (poly.empty()) throw not_polynomial_error();
    for (const BigInt& c : poly)
        if (c < 0) throw not_polynomial_error();
    if (poly.front() != 1) throw not_polynomial_error();
    ArtinianProfile prof;
    prof.socle_degree = static_cast<long long>(poly.size()) - 1;
    prof.coeffs = std::move(poly);
    return prof;
}

inline bool check_gorenstein_symmetry(const std::vector<BigInt>& coeffs) {
    std::size_t n = coeffs.size();
    for (std::size_t i = 0; i < n / 2 + 1; ++i)
        if (coeffs[i] != coeffs[n - 1 - i]) return false;
    return true;
}

inline bool check_gorenstein_symmetry(const ArtinianProfile& prof) {
    return check_gorenstein_symmetry(prof.coeffs);
}

// Display form "(1 - t^6)/((1 - t^3)(1 - t^3)(1 - t^2))"; an empty factor
// list renders as "1".
inline std::string render_series(const RationalSeries& s) {
    auto factor = [](long long k) {
        return "(1 - t^" + std::to_string(k) + ")";
    };
    std::string num;
    if (s.numerator_factors.empty()) {
        num = "1";
    } else {
        for (long long d : s.numerator_factors) num += factor(d);
    }
    std::string den;
    for (long long k : s.denom_factors) den += factor(k);
    return num + "/(" + den + ")";
}

} // namespace fsig
