#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ring.hpp"

namespace fsig {

constexpr std::uint32_t max_exponent = 1u << 31;

struct Monomial {
    std::vector<std::uint32_t> exps;
    bool operator==(const Monomial&) const = default;
};

inline long long weighted_degree(const Monomial& m, const WeightedRing& ring) {
    long long d = 0;
    for (std::size_t i = 0; i < m.exps.size(); ++i)
        d += static_cast<long long>(m.exps[i]) * ring.weights[i];
    return d;
}

// Canonical term order: ascending weighted degree; within a degree the
// lexicographically larger exponent vector comes first, so x^2 precedes x*y
// precedes y^2 under the standard grading.
struct TermOrder {
    const WeightedRing* ring = nullptr;
    bool operator()(const Monomial& a, const Monomial& b) const {
        long long da = weighted_degree(a, *ring);
        long long db = weighted_degree(b, *ring);
        if (da != db) return da < db;
        return b.exps < a.exps;
    }
};

// Sparse multivariate polynomial over F_p. Canonical form: no stored
// coefficient is 0 mod p, so equality of term maps is polynomial equality.
class Polynomial {
public:
    using TermMap = std::map<Monomial, std::uint32_t, TermOrder>;

    static Polynomial zero(RingPtr ring) { return Polynomial(std::move(ring)); }

    static Polynomial constant(RingPtr ring, long long c) {
        Polynomial f(std::move(ring));
        f.add_term(Monomial{std::vector<std::uint32_t>(f.ring_->nvars(), 0)}, c);
        return f;
    }

    static Polynomial variable(RingPtr ring, std::size_t var_index) {
        Polynomial f(std::move(ring));
        Monomial m{std::vector<std::uint32_t>(f.ring_->nvars(), 0)};
        m.exps.at(var_index) = 1;
        f.add_term(std::move(m), 1);
        return f;
    }

    const RingPtr& ring() const { return ring_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }

    std::uint32_t coeff(const Monomial& m) const {
        auto it = terms_.find(m);
        return it == terms_.end() ? 0 : it->second;
    }

    bool has_constant_term() const {
        return coeff(Monomial{std::vector<std::uint32_t>(ring_->nvars(), 0)}) != 0;
    }

    // Adds c * m, keeping the canonical form.
    void add_term(Monomial m, long long c) {
        long long p = ring_->prime;
        std::uint32_t cc = static_cast<std::uint32_t>(((c % p) + p) % p);
        if (cc == 0) return;
        auto [it, inserted] = terms_.try_emplace(std::move(m), cc);
        if (!inserted) {
            std::uint64_t s = static_cast<std::uint64_t>(it->second) + cc;
            std::uint32_t r = static_cast<std::uint32_t>(s % static_cast<std::uint64_t>(p));
            if (r == 0)
                terms_.erase(it);
            else
                it->second = r;
        }
    }

    Polynomial operator-() const {
        Polynomial r(ring_);
        long long p = ring_->prime;
        for (const auto& [m, c] : terms_) r.terms_.emplace(m, static_cast<std::uint32_t>(p - c));
        return r;
    }

    Polynomial& operator+=(const Polynomial& o) {
        check_same_ring(o);
        for (const auto& [m, c] : o.terms_) add_term(m, c);
        return *this;
    }

    Polynomial& operator-=(const Polynomial& o) {
        check_same_ring(o);
        for (const auto& [m, c] : o.terms_) add_term(m, -static_cast<long long>(c));
        return *this;
    }

    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }

    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        a.check_same_ring(b);
        Polynomial r(a.ring_);
        std::uint64_t p = a.ring_->prime;
        std::size_t n = a.ring_->nvars();
        for (const auto& [ma, ca] : a.terms_) {
            for (const auto& [mb, cb] : b.terms_) {
                Monomial m{std::vector<std::uint32_t>(n)};
                for (std::size_t i = 0; i < n; ++i) {
                    std::uint64_t e = static_cast<std::uint64_t>(ma.exps[i]) + mb.exps[i];
                    if (e >= max_exponent) throw exponent_overflow_error();
                    m.exps[i] = static_cast<std::uint32_t>(e);
                }
                std::uint64_t c = static_cast<std::uint64_t>(ca) * cb % p;
                r.add_term(std::move(m), static_cast<long long>(c));
            }
        }
        return r;
    }

    bool operator==(const Polynomial& o) const {
        if (!(*ring_ == *o.ring_)) return false;
        if (terms_.size() != o.terms_.size()) return false;
        auto it = terms_.begin();
        auto jt = o.terms_.begin();
        for (; it != terms_.end(); ++it, ++jt)
            if (!(it->first == jt->first) || it->second != jt->second) return false;
        return true;
    }

private:
    explicit Polynomial(RingPtr ring)
        : ring_(std::move(ring)), terms_(TermOrder{ring_.get()}) {}

    void check_same_ring(const Polynomial& o) const {
        if (!(*ring_ == *o.ring_)) throw ring_mismatch_error();
    }

    RingPtr ring_;
    TermMap terms_;
};

// All weighted degrees occurring among the terms of f.
inline std::set<long long> degree_set(const Polynomial& f) {
    std::set<long long> degs;
    for (const auto& [m, c] : f.terms()) degs.insert(weighted_degree(m, *f.ring()));
    return degs;
}

// Weighted degree of a homogeneous polynomial; the zero polynomial has no
// degree and mixed degrees are reported with the full degree set.
inline long long weighted_degree(const Polynomial& f) {
    if (f.is_zero()) throw zero_polynomial_error();
    std::set<long long> degs = degree_set(f);
    if (degs.size() != 1) throw not_homogeneous_error(std::move(degs));
    return *degs.begin();
}

inline bool is_homogeneous(const Polynomial& f) {
    return !f.is_zero() && degree_set(f).size() == 1;
}

// f with every exponent multiplied by scale; over F_p this is f^scale when
// scale is a power of p, since coefficients are fixed by Frobenius.
inline Polynomial frobenius_scale(const Polynomial& f, std::uint64_t scale) {
    Polynomial r = Polynomial::zero(f.ring());
    for (const auto& [m, c] : f.terms()) {
        Monomial s{std::vector<std::uint32_t>(m.exps.size())};
        for (std::size_t i = 0; i < m.exps.size(); ++i) {
            std::uint64_t e = static_cast<std::uint64_t>(m.exps[i]) * scale;
            if (e >= max_exponent) throw exponent_overflow_error();
            s.exps[i] = static_cast<std::uint32_t>(e);
        }
        r.add_term(std::move(s), c);
    }
    return r;
}

namespace detail {

inline Polynomial small_pow(const Polynomial& f, std::uint64_t k) {
    Polynomial acc = Polynomial::constant(f.ring(), 1);
    Polynomial base = f;
    while (k > 0) {
        if (k & 1) acc = acc * base;
        k >>= 1;
        if (k) base = base * base;
    }
    return acc;
}

} // namespace detail

// f^k through the base-p expansion of k: f^(p^i) only rescales exponents, so
// just the digit powers f^(c_i), c_i < p, are formed by multiplication.
inline Polynomial poly_pow(const Polynomial& f, std::uint64_t k) {
    if (k == 0) return Polynomial::constant(f.ring(), 1);
    if (f.is_zero()) return f;
    std::uint64_t p = f.ring()->prime;
    Polynomial result = Polynomial::constant(f.ring(), 1);
    std::uint64_t scale = 1;
    while (k > 0) {
        std::uint64_t digit = k % p;
        if (digit != 0) result = result * frobenius_scale(detail::small_pow(f, digit), scale);
        k /= p;
        if (k > 0) {
            if (scale > max_exponent) throw exponent_overflow_error();
            scale *= p;
        }
    }
    return result;
}

// Canonical representative of f in S/m^[q]: drops every term with some
// exponent >= q.
inline Polynomial bracket_normal_form(const Polynomial& f, std::uint64_t q) {
    Polynomial r = Polynomial::zero(f.ring());
    for (const auto& [m, c] : f.terms()) {
        bool inside = true;
        for (std::uint32_t e : m.exps)
            if (e >= q) { inside = false; break; }
        if (inside) r.add_term(m, c);
    }
    return r;
}

// ---------------------------------------------------------------------------
// Text syntax: `+ - * ^` with `^` binding tightest, then multiplication
// (explicit `*` or juxtaposition, so `2x` and `yz^2` work), then `+ -`.
// Unary minus is allowed at the start of a term. Whitespace is insignificant.

namespace detail {

class PolyParser {
public:
    PolyParser(std::string_view text, RingPtr ring)
        : text_(text), ring_(std::move(ring)) {}

    Polynomial parse() {
        Polynomial f = parse_expr();
        skip_ws();
        if (pos_ != text_.size()) throw syntax_error(pos_, "unexpected trailing input");
        return f;
    }

private:
    std::string_view text_;
    RingPtr ring_;
    std::size_t pos_ = 0;

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    char peek() {
        skip_ws();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    bool starts_atom(char c) const {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '(';
    }

    Polynomial parse_expr() {
        Polynomial acc = parse_term();
        for (;;) {
            char c = peek();
            if (c == '+') {
                ++pos_;
                acc += parse_term();
            } else if (c == '-') {
                ++pos_;
                acc -= parse_term();
            } else {
                return acc;
            }
        }
    }

    Polynomial parse_term() {
        bool negate = false;
        while (peek() == '-') {
            ++pos_;
            negate = !negate;
        }
        char c = peek();
        if (!starts_atom(c)) throw syntax_error(pos_, "expected a term");
        Polynomial acc = parse_factor();
        for (;;) {
            c = peek();
            if (c == '*') {
                ++pos_;
                if (!starts_atom(peek())) throw syntax_error(pos_, "expected a factor after '*'");
                acc = acc * parse_factor();
            } else if (starts_atom(c)) {
                acc = acc * parse_factor();
            } else {
                break;
            }
        }
        return negate ? -acc : acc;
    }

    Polynomial parse_factor() {
        Polynomial base = parse_atom();
        if (peek() == '^') {
            ++pos_;
            if (!std::isdigit(static_cast<unsigned char>(peek())))
                throw syntax_error(pos_, "expected an integer exponent after '^'");
            std::uint64_t k = parse_uint(max_exponent);
            return poly_pow(base, k);
        }
        return base;
    }

    Polynomial parse_atom() {
        char c = peek();
        if (c == '(') {
            ++pos_;
            Polynomial inner = parse_expr();
            if (peek() != ')') throw syntax_error(pos_, "expected ')'");
            ++pos_;
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::uint64_t p = ring_->prime;
            std::uint64_t value = 0;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
                value = (value * 10 + static_cast<std::uint64_t>(text_[pos_] - '0')) % p;
                ++pos_;
            }
            return Polynomial::constant(ring_, static_cast<long long>(value));
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return parse_variable();
        throw syntax_error(pos_, "unexpected character");
    }

    // Longest declared variable name at the current position; `yz` therefore
    // reads as y*z when both are variables.
    Polynomial parse_variable() {
        std::size_t best_len = 0;
        int best_var = -1;
        for (std::size_t i = 0; i < ring_->nvars(); ++i) {
            const std::string& name = ring_->var_names[i];
            if (name.size() > best_len && text_.substr(pos_, name.size()) == name) {
                best_len = name.size();
                best_var = static_cast<int>(i);
            }
        }
        if (best_var < 0) {
            std::size_t start = pos_;
            std::size_t end = pos_;
            while (end < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[end])) || text_[end] == '_'))
                ++end;
            throw unknown_variable_error(std::string(text_.substr(start, end - start)), start);
        }
        pos_ += best_len;
        return Polynomial::variable(ring_, static_cast<std::size_t>(best_var));
    }

    std::uint64_t parse_uint(std::uint64_t limit) {
        std::uint64_t value = 0;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            value = value * 10 + static_cast<std::uint64_t>(text_[pos_] - '0');
            if (value >= limit) throw exponent_overflow_error();
            ++pos_;
        }
        return value;
    }
};

} // namespace detail

inline Polynomial parse_poly(std::string_view text, RingPtr ring) {
    return detail::PolyParser(text, std::move(ring)).parse();
}

// Canonical renderer: terms in canonical order, explicit `*` and `^`,
// coefficients always printed. parse_poly(render_poly(f)) == f.
inline std::string render_poly(const Polynomial& f) {
    if (f.is_zero()) return "0";
    const WeightedRing& ring = *f.ring();
    std::string out;
    bool first = true;
    for (const auto& [m, c] : f.terms()) {
        if (!first) out += " + ";
        first = false;
        out += std::to_string(c);
        for (std::size_t i = 0; i < m.exps.size(); ++i) {
            if (m.exps[i] == 0) continue;
            out += "*";
            out += ring.var_names[i];
            out += "^";
            out += std::to_string(m.exps[i]);
        }
    }
    return out;
}

} // namespace fsig
