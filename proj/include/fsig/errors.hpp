#pragma once

#include <cstddef>
#include <set>
#include <stdexcept>
#include <string>

namespace fsig {

// Base class for every error thrown by the library.
class error : public std::runtime_error {
public:
    explicit error(const std::string& msg) : std::runtime_error(msg) {}
};

class not_prime_error : public error {
public:
    long long value;
    explicit not_prime_error(long long v)
        : error("not a supported prime: " + std::to_string(v)), value(v) {}
};

class duplicate_variable_error : public error {
public:
    std::string name;
    explicit duplicate_variable_error(std::string n)
        : error("duplicate variable: " + n), name(std::move(n)) {}
};

class nonpositive_weight_error : public error {
public:
    explicit nonpositive_weight_error(const std::string& var)
        : error("variable " + var + " has nonpositive weight") {}
};

class negative_dimension_error : public error {
public:
    negative_dimension_error(std::size_t vars, std::size_t rels)
        : error("negative dimension: " + std::to_string(vars) + " variables, " +
                std::to_string(rels) + " relations") {}
};

class syntax_error : public error {
public:
    std::size_t position;
    syntax_error(std::size_t pos, const std::string& detail)
        : error("syntax error at position " + std::to_string(pos) + ": " + detail),
          position(pos) {}
};

class unknown_variable_error : public error {
public:
    std::string name;
    std::size_t position;
    unknown_variable_error(std::string n, std::size_t pos)
        : error("unknown variable '" + n + "' at position " + std::to_string(pos)),
          name(std::move(n)), position(pos) {}
};

class exponent_overflow_error : public error {
public:
    exponent_overflow_error() : error("exponent exceeds 2^31") {}
};

class ring_mismatch_error : public error {
public:
    ring_mismatch_error() : error("operands belong to different rings") {}
};

class zero_polynomial_error : public error {
public:
    zero_polynomial_error() : error("operation undefined for the zero polynomial") {}
};

class unit_polynomial_error : public error {
public:
    unit_polynomial_error() : error("polynomial has a constant term") {}
};

class not_homogeneous_error : public error {
public:
    std::set<long long> degrees;
    explicit not_homogeneous_error(std::set<long long> degs)
        : error(message_of(degs)), degrees(std::move(degs)) {}

private:
    static std::string message_of(const std::set<long long>& degs) {
        std::string m = "polynomial is not weighted-homogeneous; degrees {";
        bool first = true;
        for (long long d : degs) {
            if (!first) m += ", ";
            m += std::to_string(d);
            first = false;
        }
        return m + "}";
    }
};

class invalid_degrees_error : public error {
public:
    explicit invalid_degrees_error(const std::string& why)
        : error("invalid degrees: " + why) {}
};

class pole_order_mismatch_error : public error {
public:
    long long actual;
    long long expected;
    pole_order_mismatch_error(long long act, long long exp)
        : error("pole order at t=1 is " + std::to_string(act) + ", expected " +
                std::to_string(exp)),
          actual(act), expected(exp) {}
};

class not_polynomial_error : public error {
public:
    not_polynomial_error()
        : error("series quotient is not a polynomial with nonnegative coefficients; "
                "the given degrees do not form a system of parameters here") {}
};

class budget_exceeded_error : public error {
public:
    long long required;
    long long limit;
    budget_exceeded_error(long long req, long long lim)
        : error("basis size " + std::to_string(req) + " exceeds budget " +
                std::to_string(lim)),
          required(req), limit(lim) {}
};

class unsupported_characteristic_error : public error {
public:
    unsupported_characteristic_error(const std::string& family, long long p)
        : error("characteristic " + std::to_string(p) + " not supported for family " +
                family) {}
};

class bad_index_error : public error {
public:
    bad_index_error(const std::string& family, long long n)
        : error("index " + std::to_string(n) + " out of range for family " + family) {}
};

class oracle_mismatch_error : public error {
public:
    long long blocked;
    long long naive;
    oracle_mismatch_error(long long b, long long n)
        : error("rank mismatch: blocked " + std::to_string(b) + " vs oracle " +
                std::to_string(n)),
          blocked(b), naive(n) {}
};

} // namespace fsig
