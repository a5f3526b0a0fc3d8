#pragma once

#include <cctype>
#include <cstdint>
#include <memory>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace fsig {

inline bool is_prime_ll(long long n) {
    if (n < 2) return false;
    for (long long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

inline bool is_identifier(const std::string& s) {
    if (s.empty()) return false;
    if (!std::isalpha(static_cast<unsigned char>(s[0])) && s[0] != '_') return false;
    for (char c : s)
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
    return true;
}

// Ambient data of a weighted-homogeneous hypersurface (or polynomial) ring:
// prime p, graded variables, and the weighted degrees of the defining
// relations. dim = #variables - #relations.
struct WeightedRing {
    std::uint32_t prime = 0;
    std::vector<std::string> var_names;
    std::vector<long long> weights;
    std::vector<long long> relation_degrees;

    std::size_t nvars() const { return var_names.size(); }

    int dim() const {
        return static_cast<int>(var_names.size()) -
               static_cast<int>(relation_degrees.size());
    }

    long long weight_sum() const {
        long long s = 0;
        for (long long w : weights) s += w;
        return s;
    }

    int var_index(const std::string& name) const {
        for (std::size_t i = 0; i < var_names.size(); ++i)
            if (var_names[i] == name) return static_cast<int>(i);
        return -1;
    }

    bool operator==(const WeightedRing&) const = default;
};

using RingPtr = std::shared_ptr<const WeightedRing>;

// p must be a prime below 2^31 (machine-word coefficient arithmetic).
inline RingPtr make_ring(long long p,
                         const std::vector<std::pair<std::string, long long>>& vars,
                         const std::vector<long long>& relation_degrees = {}) {
    if (p < 2 || p >= (1LL << 31) || !is_prime_ll(p)) throw not_prime_error(p);
    if (vars.empty()) throw error("ring needs at least one variable");
    WeightedRing r;
    r.prime = static_cast<std::uint32_t>(p);
    std::set<std::string> seen;
    for (const auto& [name, w] : vars) {
        if (!is_identifier(name)) throw error("invalid variable name: " + name);
        if (!seen.insert(name).second) throw duplicate_variable_error(name);
        if (w < 1) throw nonpositive_weight_error(name);
        r.var_names.push_back(name);
        r.weights.push_back(w);
    }
    for (long long d : relation_degrees)
        if (d < 1) throw invalid_degrees_error("relation degree must be positive");
    if (vars.size() < relation_degrees.size())
        throw negative_dimension_error(vars.size(), relation_degrees.size());
    r.relation_degrees = relation_degrees;
    return std::make_shared<const WeightedRing>(std::move(r));
}

} // namespace fsig
