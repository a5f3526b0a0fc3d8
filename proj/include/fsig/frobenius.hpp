#pragma once

#include <chrono>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "linalg.hpp"
#include "qseries.hpp"
#include "util.hpp"
#include "wpoly.hpp"

namespace fsig {

// Default cap on the monomial basis size q^n for the blocked computation.
constexpr long long default_budget = 1LL << 21;

// Hard caps independent of the configurable budget: the blocked basis tables
// and the single dense matrix of the unblocked path must stay in memory.
constexpr long long blocked_basis_cap = 1LL << 24;
constexpr long long unblocked_basis_cap = 1LL << 13;
constexpr long long oracle_basis_cap = 5000;

// Per-e splitting data of a hypersurface S/(f): q = p^e, the free rank a_q,
// the exact ratio a_q/q^d, and the weighted-degree profile of the free
// summand generators.
struct SplittingReport {
    int e = 0;
    long long q = 0;
    long long a_q = 0;
    Rational ratio;
    std::map<long long, long long> degree_profile;
    bool degree_bound_ok = true;
    long long block_count = 0;
    long long elapsed_ms = 0;
};

struct SplittingSequence {
    std::vector<SplittingReport> reports;
    bool budget_stopped = false;
    int stopped_e = 0;
    long long stopped_need = 0;
    long long stopped_limit = 0;
};

enum class Verdict { UniqueSummand, FPureRationalLike, NotFPure, Inconclusive };

inline std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::UniqueSummand: return "UniqueSummand";
        case Verdict::FPureRationalLike: return "FPureRationalLike";
        case Verdict::NotFPure: return "NotFPure";
        case Verdict::Inconclusive: return "Inconclusive";
    }
    return "Inconclusive";
}

struct Classification {
    bool is_f_pure = false;
    long long a_inv = 0;
    bool unique_summand_all_e = false;
    Verdict verdict = Verdict::Inconclusive;
    std::vector<SplittingReport> reports;
};

struct PartialSumBound {
    bool holds = false;
    long long q = 0;
    long long a_q = 0;
    long long cutoff = 0;        // floor(-a(q-1)/2)
    BigInt twice_partial_sum;    // 2 * sum_{n <= cutoff} r_n
};

namespace detail {

inline void require_proper(const Polynomial& f) {
    if (f.is_zero()) throw zero_polynomial_error();
    if (f.has_constant_term()) throw unit_polynomial_error();
}

inline long long checked_q(long long p, int e) {
    long long q = 1;
    for (int i = 0; i < e; ++i) {
        if (q > (1LL << 62) / p) throw budget_exceeded_error((1LL << 62), blocked_basis_cap);
        q *= p;
    }
    return q;
}

inline long long checked_basis_size(long long q, std::size_t nvars) {
    long long total = 1;
    for (std::size_t i = 0; i < nvars; ++i) {
        if (total > (1LL << 62) / q) return 1LL << 62;
        total *= q;
    }
    return total;
}

struct GTerm {
    std::vector<std::uint32_t> exps;
    long long code_offset;
    std::uint32_t coeff;
};

inline std::vector<GTerm> term_table(const Polynomial& g, long long q) {
    std::vector<GTerm> out;
    out.reserve(g.term_count());
    for (const auto& [m, c] : g.terms()) {
        GTerm t;
        t.exps = m.exps;
        t.coeff = c;
        t.code_offset = 0;
        long long radix = 1;
        bool reachable = true;
        for (std::uint32_t e : m.exps) {
            if (e >= q) { reachable = false; break; }
            t.code_offset += static_cast<long long>(e) * radix;
            radix *= q;
        }
        // Terms with an exponent >= q can never land inside the basis box.
        if (reachable) out.push_back(std::move(t));
    }
    return out;
}

} // namespace detail

// a(R) of the hypersurface R = S/(f): weighted degree of f minus the sum of
// the variable weights.
inline long long hypersurface_a_invariant(const Polynomial& f) {
    return weighted_degree(f) - f.ring()->weight_sum();
}

inline int hypersurface_dim(const WeightedRing& ring) {
    return static_cast<int>(ring.nvars()) - 1;
}

// F-purity of S/(f) by the colon-ideal criterion: f^(p-1) must survive
// outside m^[p].
inline bool fedder_is_fpure(const Polynomial& f) {
    detail::require_proper(f);
    std::uint32_t p = f.ring()->prime;
    Polynomial g = poly_pow(f, p - 1);
    return !bracket_normal_form(g, p).is_zero();
}

// Every degree carrying a free-summand generator must satisfy
// n <= -a(q-1); an empty profile passes vacuously.
inline bool splitting_degree_bound_ok(const std::map<long long, long long>& profile,
                                      long long a, long long q) {
    for (const auto& [deg, count] : profile)
        if (count > 0 && deg > -a * (q - 1)) return false;
    return true;
}

// a_q as the rank of multiplication by f^(q-1) on S/m^[q]. For homogeneous f
// the map shifts weighted degree by (q-1) deg f, so the matrix splits into
// independent degree blocks whose ranks are evaluated in parallel. Source
// degrees whose target block is empty contribute nothing and are skipped.
inline SplittingReport free_rank_aq(const Polynomial& f, int e,
                                    long long budget = default_budget,
                                    int threads = 0, bool want_profile = true) {
    detail::require_proper(f);
    auto t0 = std::chrono::steady_clock::now();
    const WeightedRing& ring = *f.ring();
    long long p = ring.prime;
    std::size_t nvars = ring.nvars();
    if (e < 1) throw error("e must be at least 1");
    long long q = detail::checked_q(p, e);
    long long cap = std::min(budget, blocked_basis_cap);

    SplittingReport rep;
    rep.e = e;
    rep.q = q;

    std::set<long long> degs = degree_set(f);
    bool homogeneous = degs.size() == 1;
    if (want_profile && !homogeneous) throw not_homogeneous_error(std::move(degs));

    if (!homogeneous) {
        // Grading ignored: one unblocked multiplication matrix, rank only.
        long long total = detail::checked_basis_size(q, nvars);
        if (total > std::min(cap, unblocked_basis_cap))
            throw budget_exceeded_error(total, std::min(cap, unblocked_basis_cap));
        Polynomial g = poly_pow(f, static_cast<std::uint64_t>(q - 1));
        auto gt = detail::term_table(g, q);
        std::size_t Q = static_cast<std::size_t>(total);
        std::vector<std::uint32_t> exps(Q * nvars);
        for (std::size_t code = 0; code < Q; ++code) {
            long long rest = static_cast<long long>(code);
            for (std::size_t i = 0; i < nvars; ++i) {
                exps[code * nvars + i] = static_cast<std::uint32_t>(rest % q);
                rest /= q;
            }
        }
        std::vector<Triplet> trips;
        for (std::size_t col = 0; col < Q; ++col) {
            const std::uint32_t* me = &exps[col * nvars];
            for (const auto& t : gt) {
                bool in = true;
                for (std::size_t i = 0; i < nvars; ++i) {
                    if (static_cast<long long>(me[i]) + t.exps[i] >= q) { in = false; break; }
                }
                if (in)
                    trips.emplace_back(static_cast<std::uint32_t>(col + t.code_offset),
                                       static_cast<std::uint32_t>(col), t.coeff);
            }
        }
        MatrixFp M = MatrixFp::from_triplets(Q, Q, static_cast<std::uint32_t>(p),
                                             std::move(trips));
        rep.a_q = M.rank();
        rep.block_count = 1;
    } else {
        long long total = detail::checked_basis_size(q, nvars);
        if (total > cap) throw budget_exceeded_error(total, cap);
        std::size_t Q = static_cast<std::size_t>(total);

        long long deg_f = *degs.begin();
        long long shift = (q - 1) * deg_f;
        Polynomial g = poly_pow(f, static_cast<std::uint64_t>(q - 1));
        auto gt = detail::term_table(g, q);

        // Decode every basis monomial once and bucket the codes by degree.
        std::vector<std::uint32_t> exps(Q * nvars);
        std::vector<long long> deg_of(Q);
        std::map<long long, std::vector<long long>> buckets;
        for (std::size_t code = 0; code < Q; ++code) {
            long long rest = static_cast<long long>(code);
            long long d = 0;
            for (std::size_t i = 0; i < nvars; ++i) {
                std::uint32_t ei = static_cast<std::uint32_t>(rest % q);
                rest /= q;
                exps[code * nvars + i] = ei;
                d += static_cast<long long>(ei) * ring.weights[i];
            }
            deg_of[code] = d;
            buckets[d].push_back(static_cast<long long>(code));
        }
        // Canonical in-bucket order: descending lex on exponent vectors.
        auto desc_lex = [&](long long a, long long b) {
            const std::uint32_t* ea = &exps[static_cast<std::size_t>(a) * nvars];
            const std::uint32_t* eb = &exps[static_cast<std::size_t>(b) * nvars];
            return std::lexicographical_compare(eb, eb + nvars, ea, ea + nvars);
        };
        std::vector<std::int32_t> local_index(Q);
        for (auto& [d, codes] : buckets) {
            std::sort(codes.begin(), codes.end(), desc_lex);
            for (std::size_t i = 0; i < codes.size(); ++i)
                local_index[static_cast<std::size_t>(codes[i])] = static_cast<std::int32_t>(i);
        }

        std::vector<long long> block_degrees;
        std::vector<MatrixFp> blocks;
        for (const auto& [src_deg, src_codes] : buckets) {
            auto target = buckets.find(src_deg + shift);
            if (target == buckets.end()) continue;
            const auto& dst_codes = target->second;
            std::vector<Triplet> trips;
            for (std::size_t col = 0; col < src_codes.size(); ++col) {
                long long code = src_codes[col];
                const std::uint32_t* me = &exps[static_cast<std::size_t>(code) * nvars];
                for (const auto& t : gt) {
                    bool in = true;
                    for (std::size_t i = 0; i < nvars; ++i) {
                        if (static_cast<long long>(me[i]) + t.exps[i] >= q) { in = false; break; }
                    }
                    if (in) {
                        long long tcode = code + t.code_offset;
                        trips.emplace_back(
                            static_cast<std::uint32_t>(local_index[static_cast<std::size_t>(tcode)]),
                            static_cast<std::uint32_t>(col), t.coeff);
                    }
                }
            }
            block_degrees.push_back(src_deg);
            blocks.push_back(MatrixFp::from_triplets(dst_codes.size(), src_codes.size(),
                                                     static_cast<std::uint32_t>(p),
                                                     std::move(trips)));
        }

        std::vector<long long> ranks = rank_batch(blocks, threads);
        for (std::size_t i = 0; i < ranks.size(); ++i) {
            rep.a_q += ranks[i];
            if (ranks[i] > 0) rep.degree_profile[block_degrees[i]] = ranks[i];
        }
        rep.block_count = static_cast<long long>(blocks.size());
        long long a = deg_f - ring.weight_sum();
        rep.degree_bound_ok = splitting_degree_bound_ok(rep.degree_profile, a, q);
    }

    int d = hypersurface_dim(ring);
    rep.ratio = Rational(BigInt(rep.a_q),
                         big_pow(BigInt(q), static_cast<unsigned>(d < 0 ? 0 : d)));
    rep.elapsed_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                         std::chrono::steady_clock::now() - t0)
                         .count();
    return rep;
}

// Independent check: one full q^n x q^n multiplication matrix, no degree
// blocking, f^(q-1) by plain repeated multiplication, dense elimination.
inline long long naive_free_rank_oracle(const Polynomial& f, int e) {
    detail::require_proper(f);
    const WeightedRing& ring = *f.ring();
    long long p = ring.prime;
    std::size_t nvars = ring.nvars();
    long long q = detail::checked_q(p, e);
    long long total = detail::checked_basis_size(q, nvars);
    if (total > oracle_basis_cap) throw budget_exceeded_error(total, oracle_basis_cap);
    std::size_t Q = static_cast<std::size_t>(total);

    Polynomial g = f;
    for (long long i = 2; i <= q - 1; ++i) g = g * f;

    std::vector<std::uint32_t> dense(Q * Q, 0);
    std::vector<std::uint32_t> mu(nvars);
    for (std::size_t col = 0; col < Q; ++col) {
        long long rest = static_cast<long long>(col);
        for (std::size_t i = 0; i < nvars; ++i) {
            mu[i] = static_cast<std::uint32_t>(rest % q);
            rest /= q;
        }
        for (const auto& [m, c] : g.terms()) {
            bool in = true;
            long long row = 0;
            long long radix = 1;
            for (std::size_t i = 0; i < nvars; ++i) {
                long long ei = static_cast<long long>(mu[i]) + m.exps[i];
                if (ei >= q) { in = false; break; }
                row += ei * radix;
                radix *= q;
            }
            if (in) dense[static_cast<std::size_t>(row) * Q + col] = c;
        }
    }
    MatrixFp M = MatrixFp::from_dense(Q, Q, static_cast<std::uint32_t>(p),
                                      std::move(dense), MatrixRep::Dense);
    return M.rank();
}

// Reports for e = 1..e_max; stops early with a budget marker once q^n
// exceeds the budget (later e only grow).
inline SplittingSequence fsignature_sequence(const Polynomial& f, int e_max,
                                             long long budget = default_budget,
                                             int threads = 0,
                                             bool want_profile = true) {
    SplittingSequence seq;
    for (int e = 1; e <= e_max; ++e) {
        try {
            seq.reports.push_back(free_rank_aq(f, e, budget, threads, want_profile));
        } catch (const budget_exceeded_error& ex) {
            seq.budget_stopped = true;
            seq.stopped_e = e;
            seq.stopped_need = ex.required;
            seq.stopped_limit = ex.limit;
            break;
        }
    }
    return seq;
}

namespace detail {

inline Verdict verdict_from(bool fpure, long long a,
                            const std::vector<SplittingReport>& reports) {
    if (reports.empty()) return Verdict::Inconclusive;
    if (!fpure) {
        for (const auto& r : reports)
            if (r.a_q != 0)
                throw error("F-purity test disagrees with computed splitting rank");
        return Verdict::NotFPure;
    }
    for (const auto& r : reports)
        if (r.a_q < 1) throw error("F-purity test disagrees with computed splitting rank");
    if (a == 0) {
        for (const auto& r : reports)
            if (r.a_q != 1) return Verdict::Inconclusive;
        return Verdict::UniqueSummand;
    }
    if (a < 0) {
        for (std::size_t i = 1; i < reports.size(); ++i)
            if (reports[i].a_q <= reports[i - 1].a_q) return Verdict::Inconclusive;
        return Verdict::FPureRationalLike;
    }
    return Verdict::Inconclusive;
}

} // namespace detail

// Trichotomy for a weighted-homogeneous hypersurface: exactly one free
// summand at every computed e (F-pure with a = 0), growing free rank (F-pure
// with a < 0), or no free summand at all.
inline Classification classify(const Polynomial& f, int e_max,
                               long long budget = default_budget, int threads = 0) {
    detail::require_proper(f);
    std::set<long long> degs = degree_set(f);
    if (degs.size() != 1) throw not_homogeneous_error(std::move(degs));
    Classification cls;
    cls.is_f_pure = fedder_is_fpure(f);
    cls.a_inv = hypersurface_a_invariant(f);
    SplittingSequence seq = fsignature_sequence(f, e_max, budget, threads);
    cls.reports = std::move(seq.reports);
    cls.verdict = detail::verdict_from(cls.is_f_pure, cls.a_inv, cls.reports);
    cls.unique_summand_all_e = !cls.reports.empty();
    for (const auto& r : cls.reports)
        if (r.a_q != 1) cls.unique_summand_all_e = false;
    return cls;
}

// a_q <= 2 * sum_{n <= floor(-a(q-1)/2)} r_n, where r_n are the graded
// dimensions of S/(f) modulo parameter powers of degrees q*N*b_i. The scale N
// stands in for "parameter degrees large enough". This variant takes a
// precomputed a_q so suite runs evaluate the rank once per cell.
inline PartialSumBound partial_sum_bound_from(long long a, long long q, long long a_q,
                                              const std::vector<long long>& weights,
                                              long long deg_f,
                                              const std::vector<long long>& sop_degrees,
                                              long long scale) {
    if (scale < 1) throw invalid_degrees_error("scale must be at least 1");
    if (sop_degrees.size() + 1 != weights.size())
        throw invalid_degrees_error("need one parameter degree per dimension");
    RationalSeries series = ci_series(weights, {deg_f});
    std::vector<long long> params;
    params.reserve(sop_degrees.size());
    for (long long b : sop_degrees) params.push_back(q * scale * b);
    ArtinianProfile prof = artinian_reduction(series, params);

    PartialSumBound out;
    out.q = q;
    out.a_q = a_q;
    out.cutoff = a > 0 ? -1 : (-a) * (q - 1) / 2;
    BigInt sum = 0;
    for (long long n = 0; n <= out.cutoff && n <= prof.socle_degree; ++n)
        sum += prof.coeffs[static_cast<std::size_t>(n)];
    out.twice_partial_sum = 2 * sum;
    out.holds = BigInt(out.a_q) <= out.twice_partial_sum;
    return out;
}

inline PartialSumBound partial_sum_bound(const Polynomial& f, int e,
                                         const std::vector<long long>& sop_degrees,
                                         long long scale,
                                         long long budget = default_budget,
                                         int threads = 0) {
    detail::require_proper(f);
    long long deg_f = weighted_degree(f);
    const WeightedRing& ring = *f.ring();
    long long a = deg_f - ring.weight_sum();
    SplittingReport rep = free_rank_aq(f, e, budget, threads);
    return partial_sum_bound_from(a, rep.q, rep.a_q, ring.weights, deg_f, sop_degrees,
                                  scale);
}

} // namespace fsig
