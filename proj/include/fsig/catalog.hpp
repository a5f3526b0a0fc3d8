#pragma once

#include <chrono>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "frobenius.hpp"

namespace fsig {

enum class Family { A, D, E6, E7, E8, Regular, Fermat, Diagonal, Random };

inline std::string family_token(Family f) {
    switch (f) {
        case Family::A: return "A";
        case Family::D: return "D";
        case Family::E6: return "E6";
        case Family::E7: return "E7";
        case Family::E8: return "E8";
        case Family::Regular: return "Regular";
        case Family::Fermat: return "Fermat";
        case Family::Diagonal: return "Diagonal";
        case Family::Random: return "Random";
    }
    return "?";
}

// One catalog row: a concrete equation with weights, the characteristic to
// run it at, parameter degrees for the Artinian reductions, and golden
// invariant values where the literature pins them.
struct FamilyEntry {
    Family family = Family::Random;
    std::string index;
    long long min_prime = 2;
    long long prime = 0;
    std::vector<std::pair<std::string, long long>> variables;
    std::string equation;
    std::vector<long long> sop_degrees;
    std::optional<Rational> golden_s;
    std::optional<Rational> golden_eprime;
    std::optional<long long> golden_a;
    std::optional<Rational> golden_bound;
    // e' as printed in the reference table for the D family; it contradicts
    // the table's own bound column, so golden_eprime stores the value forced
    // by the weights and this keeps the printed one on record.
    std::optional<Rational> printed_eprime;

    std::string id() const {
        return family_token(family) + index + "@p" + std::to_string(prime);
    }

    RingPtr ring() const { return make_ring(prime, variables); }
    Polynomial poly() const { return parse_poly(equation, ring()); }

    std::vector<long long> weights() const {
        std::vector<long long> w;
        w.reserve(variables.size());
        for (const auto& [name, wt] : variables) w.push_back(wt);
        return w;
    }
};

inline FamilyEntry ade_entry(Family family, long long n, long long p) {
    FamilyEntry e;
    e.family = family;
    e.prime = p;
    switch (family) {
        case Family::A:
            if (n < 1) throw bad_index_error("A", n);
            // x^2+y^2+z^(n+1) is non-reduced in characteristic 2, so the
            // catalog starts the quadric entries at p = 3.
            e.min_prime = 3;
            e.index = std::to_string(n);
            e.variables = {{"x", n + 1}, {"y", n + 1}, {"z", 2}};
            e.equation = "x^2+y^2+z^" + std::to_string(n + 1);
            e.sop_degrees = {n + 1, 2};
            e.golden_s = Rational(1, n + 1);
            e.golden_eprime = Rational(1, n + 1);
            e.golden_a = -2;
            e.golden_bound = Rational(1, n + 1);
            break;
        case Family::D:
            if (n < 4) throw bad_index_error("D", n);
            e.min_prime = 3;
            e.index = std::to_string(n);
            e.variables = {{"x", n - 1}, {"y", 2}, {"z", n - 2}};
            e.equation = "x^2+y*z^2+y^" + std::to_string(n - 1);
            e.sop_degrees = {2, n - 2};
            e.golden_s = Rational(1, 4 * (n - 2));
            e.golden_eprime = Rational(1, n - 2);
            e.printed_eprime = Rational(1, n - 1);
            e.golden_a = -1;
            e.golden_bound = Rational(1, 4 * (n - 2));
            break;
        case Family::E6:
            e.min_prime = 5;
            e.variables = {{"x", 6}, {"y", 4}, {"z", 3}};
            e.equation = "x^2+y^3+z^4";
            e.sop_degrees = {4, 3};
            e.golden_s = Rational(1, 24);
            e.golden_eprime = Rational(1, 6);
            e.golden_a = -1;
            e.golden_bound = Rational(1, 24);
            break;
        case Family::E7:
            // Weights: the smallest integral solution of 2w_x = 3w_y = w_y + 3w_z.
            e.min_prime = 5;
            e.variables = {{"x", 9}, {"y", 6}, {"z", 4}};
            e.equation = "x^2+y^3+y*z^3";
            e.sop_degrees = {6, 4};
            e.golden_s = Rational(1, 48);
            e.golden_eprime = Rational(1, 12);
            e.golden_a = -1;
            e.golden_bound = Rational(1, 48);
            break;
        case Family::E8:
            e.min_prime = 7;
            e.variables = {{"x", 15}, {"y", 10}, {"z", 6}};
            e.equation = "x^2+y^3+z^5";
            e.sop_degrees = {10, 6};
            e.golden_s = Rational(1, 120);
            e.golden_eprime = Rational(1, 30);
            e.golden_a = -1;
            e.golden_bound = Rational(1, 120);
            break;
        default:
            throw bad_index_error(family_token(family), n);
    }
    if (!is_prime_ll(p) || p < e.min_prime)
        throw unsupported_characteristic_error(family_token(family), p);
    return e;
}

// f = x in a polynomial ring: the free rank is exactly q^dim at every e.
inline FamilyEntry regular_entry(long long p, int nvars = 3) {
    if (nvars < 2 || nvars > 4) throw bad_index_error("Regular", nvars);
    if (!is_prime_ll(p)) throw unsupported_characteristic_error("Regular", p);
    static const char* names[] = {"x", "y", "z", "w"};
    FamilyEntry e;
    e.family = Family::Regular;
    e.min_prime = 2;
    e.prime = p;
    for (int i = 0; i < nvars; ++i) e.variables.emplace_back(names[i], 1);
    e.equation = "x";
    e.sop_degrees.assign(static_cast<std::size_t>(nvars) - 1, 1);
    e.golden_s = Rational(1);
    e.golden_eprime = Rational(1);
    e.golden_a = 1 - nvars;
    e.golden_bound = signature_bound(1 - nvars, nvars - 1, Rational(1));
    return e;
}

inline FamilyEntry fermat_entry(long long p) {
    if (!is_prime_ll(p) || p == 3) throw unsupported_characteristic_error("Fermat", p);
    FamilyEntry e;
    e.family = Family::Fermat;
    e.min_prime = 2;
    e.prime = p;
    e.variables = {{"x", 1}, {"y", 1}, {"z", 1}};
    e.equation = "x^3+y^3+z^3";
    e.sop_degrees = {1, 1};
    e.golden_s = Rational(0);
    e.golden_eprime = Rational(3);
    e.golden_a = 0;
    e.golden_bound = Rational(0);
    return e;
}

// Sum of pure powers x_i^{a_i}, graded by w_i = lcm(a)/a_i.
inline FamilyEntry diagonal_entry(const std::vector<long long>& exponents, long long p) {
    if (exponents.size() < 2 || exponents.size() > 4)
        throw bad_index_error("Diagonal", static_cast<long long>(exponents.size()));
    static const char* names[] = {"x", "y", "z", "w"};
    long long L = 1;
    for (long long a : exponents) {
        if (a < 1) throw bad_index_error("Diagonal", a);
        L = std::lcm(L, a);
    }
    if (!is_prime_ll(p)) throw unsupported_characteristic_error("Diagonal", p);
    for (long long a : exponents)
        if (a % p == 0) throw unsupported_characteristic_error("Diagonal", p);
    FamilyEntry e;
    e.family = Family::Diagonal;
    e.prime = p;
    std::string idx;
    for (std::size_t i = 0; i < exponents.size(); ++i) {
        if (i) idx += "-";
        idx += std::to_string(exponents[i]);
        e.variables.emplace_back(names[i], L / exponents[i]);
        if (i) e.equation += "+";
        e.equation += std::string(names[i]) + "^" + std::to_string(exponents[i]);
        if (i) e.sop_degrees.push_back(L / exponents[i]);
    }
    e.index = idx;
    long long a = L;
    for (long long ai : exponents) a -= L / ai;
    BigInt denom = 1;
    for (long long ai : exponents) denom *= L / ai;
    e.golden_a = a;
    e.golden_eprime = Rational(BigInt(L), denom);
    e.golden_bound =
        signature_bound(a, static_cast<int>(exponents.size()) - 1, *e.golden_eprime);
    return e;
}

// The built-in verification suite. Primes meet the per-family floors and are
// chosen coprime to the group order of each quotient singularity, so the
// golden ratios are meaningful at finite q.
inline std::vector<FamilyEntry> golden_suite_entries() {
    std::vector<FamilyEntry> out;
    out.push_back(ade_entry(Family::A, 1, 3));
    out.push_back(ade_entry(Family::A, 2, 5));
    out.push_back(ade_entry(Family::A, 3, 3));
    out.push_back(ade_entry(Family::A, 4, 3));
    out.push_back(ade_entry(Family::D, 4, 3));
    out.push_back(ade_entry(Family::D, 5, 5));
    out.push_back(ade_entry(Family::D, 6, 3));
    out.push_back(ade_entry(Family::E6, 0, 5));
    out.push_back(ade_entry(Family::E7, 0, 5));
    out.push_back(ade_entry(Family::E8, 0, 7));
    for (long long p : {2, 3, 5}) out.push_back(regular_entry(p));
    for (long long p : {5, 7, 11, 13}) out.push_back(fermat_entry(p));
    return out;
}

namespace detail {

struct SplitMix64 {
    std::uint64_t state;
    explicit SplitMix64(std::uint64_t seed) : state(seed) {}
    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    std::uint64_t below(std::uint64_t n) { return n ? next() % n : 0; }
};

inline void monomials_of_degree_rec(const std::vector<long long>& weights, long long deg,
                                    std::size_t i, std::vector<std::uint32_t>& cur,
                                    std::vector<std::vector<std::uint32_t>>& out) {
    if (i + 1 == weights.size()) {
        if (deg % weights[i] == 0) {
            cur[i] = static_cast<std::uint32_t>(deg / weights[i]);
            out.push_back(cur);
        }
        return;
    }
    for (long long e = 0; e * weights[i] <= deg; ++e) {
        cur[i] = static_cast<std::uint32_t>(e);
        monomials_of_degree_rec(weights, deg - e * weights[i], i + 1, cur, out);
    }
}

inline std::vector<std::vector<std::uint32_t>> monomials_of_degree(
    const std::vector<long long>& weights, long long deg) {
    std::vector<std::vector<std::uint32_t>> out;
    std::vector<std::uint32_t> cur(weights.size(), 0);
    monomials_of_degree_rec(weights, deg, 0, cur, out);
    return out;
}

} // namespace detail

// Reproducible stream of weighted-homogeneous tri/quadrinomials with no
// common variable factor; fodder for the corpus-level property checks.
// Entries carry no golden values.
inline std::vector<FamilyEntry> random_corpus(std::uint64_t seed, int count,
                                              int max_vars = 3, long long max_weight = 4,
                                              const std::vector<long long>& primes = {3, 5, 7}) {
    if (max_vars < 2 || max_vars > 4) throw bad_index_error("Random", max_vars);
    if (primes.empty()) throw error("corpus needs at least one prime");
    for (long long p : primes)
        if (!is_prime_ll(p)) throw not_prime_error(p);
    static const char* names[] = {"x", "y", "z", "w"};
    detail::SplitMix64 rng(seed);
    std::vector<FamilyEntry> out;
    out.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        long long p = primes[static_cast<std::size_t>(i) % primes.size()];
        for (;;) {
            std::size_t nv = 2 + rng.below(static_cast<std::uint64_t>(max_vars - 1));
            std::vector<long long> weights(nv);
            for (auto& w : weights) w = 1 + static_cast<long long>(rng.below(static_cast<std::uint64_t>(max_weight)));
            long long deg = 0;
            for (std::size_t j = 0; j < nv; ++j) deg += static_cast<long long>(rng.below(5)) * weights[j];
            if (deg < 1) continue;
            auto monos = detail::monomials_of_degree(weights, deg);
            if (monos.size() < 2) continue;
            std::size_t want = 3 + rng.below(2);
            std::size_t k = std::min(want, monos.size());
            std::vector<std::size_t> idx(monos.size());
            for (std::size_t j = 0; j < idx.size(); ++j) idx[j] = j;
            for (std::size_t j = 0; j < k; ++j)
                std::swap(idx[j], idx[j + rng.below(idx.size() - j)]);
            // Reject equations divisible by a variable.
            bool common = false;
            for (std::size_t v = 0; v < nv && !common; ++v) {
                bool all_positive = true;
                for (std::size_t j = 0; j < k; ++j)
                    if (monos[idx[j]][v] == 0) { all_positive = false; break; }
                common = all_positive;
            }
            if (common) continue;

            std::vector<std::pair<std::string, long long>> vars;
            for (std::size_t j = 0; j < nv; ++j) vars.emplace_back(names[j], weights[j]);
            RingPtr ring = make_ring(p, vars);
            Polynomial f = Polynomial::zero(ring);
            for (std::size_t j = 0; j < k; ++j) {
                long long c = 1 + static_cast<long long>(rng.below(static_cast<std::uint64_t>(p - 1)));
                f.add_term(Monomial{monos[idx[j]]}, c);
            }
            FamilyEntry e;
            e.family = Family::Random;
            e.index = std::to_string(i);
            e.min_prime = 2;
            e.prime = p;
            e.variables = std::move(vars);
            e.equation = render_poly(f);
            out.push_back(std::move(e));
            break;
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Batch experiment runner.

enum class Check { Pass, Fail, Skip };

inline std::string check_str(Check c) {
    switch (c) {
        case Check::Pass: return "pass";
        case Check::Fail: return "fail";
        case Check::Skip: return "skip";
    }
    return "skip";
}

struct EntryRow {
    int e = 0;
    long long q = 0;
    bool skipped = false;
    std::string skip_reason;
    SplittingReport report;
    Check fedder = Check::Skip;        // F-purity test vs a_q >= 1
    Check degree_bound = Check::Skip;  // profile degrees <= -a(q-1); CSV "lemma51"
    Check symmetry = Check::Skip;      // Gorenstein palindrome of the reduction
    Check partial_sum = Check::Skip;   // a_q <= 2 * low-degree mass; CSV "thm54"
    Check bound_respected = Check::Skip;
};

struct ExperimentRecord {
    FamilyEntry entry;
    bool f_pure = false;
    long long a_inv = 0;
    Rational eprime;
    Rational bound;
    std::string series_display;
    Verdict verdict = Verdict::Inconclusive;
    Check sop_valid = Check::Skip;
    Check golden_match = Check::Skip;
    std::vector<EntryRow> rows;
    std::string error;
    // Wall-clock only; deliberately kept out of the serialized reports so
    // consecutive runs stay byte-identical.
    long long elapsed_ms = 0;

    bool ok() const {
        if (!error.empty()) return false;
        if (sop_valid == Check::Fail || golden_match == Check::Fail) return false;
        for (const auto& r : rows) {
            if (r.fedder == Check::Fail || r.degree_bound == Check::Fail ||
                r.symmetry == Check::Fail || r.partial_sum == Check::Fail ||
                r.bound_respected == Check::Fail)
                return false;
        }
        return true;
    }
};

struct SuiteResult {
    std::vector<ExperimentRecord> records;
    bool all_ok = true;
};

inline SuiteResult run_suite(const std::vector<FamilyEntry>& entries, int e_max,
                             long long budget = default_budget, int threads = 0) {
    SuiteResult result;
    result.records.reserve(entries.size());
    for (const FamilyEntry& entry : entries) {
        ExperimentRecord rec;
        rec.entry = entry;
        auto t0 = std::chrono::steady_clock::now();
        try {
            RingPtr ring = entry.ring();
            Polynomial f = entry.poly();
            long long deg_f = weighted_degree(f);
            int d = hypersurface_dim(*ring);
            RationalSeries series = ci_series(ring->weights, {deg_f});
            rec.series_display = render_series(series);
            rec.a_inv = a_invariant(series);
            rec.eprime = e_prime(series, d);
            rec.bound = signature_bound(rec.a_inv, d, rec.eprime);
            rec.f_pure = fedder_is_fpure(f);

            if (!entry.sop_degrees.empty()) {
                try {
                    artinian_reduction(series, entry.sop_degrees);
                    rec.sop_valid = Check::Pass;
                } catch (const not_polynomial_error&) {
                    rec.sop_valid = Check::Fail;
                }
            }

            if (entry.golden_a || entry.golden_eprime || entry.golden_bound) {
                bool match = true;
                if (entry.golden_a && *entry.golden_a != rec.a_inv) match = false;
                if (entry.golden_eprime && *entry.golden_eprime != rec.eprime) match = false;
                if (entry.golden_bound && *entry.golden_bound != rec.bound) match = false;
                rec.golden_match = match ? Check::Pass : Check::Fail;
            }

            Rational eff_bound = entry.golden_bound ? *entry.golden_bound : rec.bound;
            bool budget_hit = false;
            std::string budget_reason;
            std::vector<SplittingReport> computed;
            for (int e = 1; e <= e_max; ++e) {
                EntryRow row;
                row.e = e;
                {
                    long long q = 1;
                    for (int i = 0; i < e && q < (1LL << 40); ++i) q *= ring->prime;
                    row.q = q;
                }
                if (budget_hit) {
                    row.skipped = true;
                    row.skip_reason = budget_reason;
                    rec.rows.push_back(std::move(row));
                    continue;
                }
                try {
                    row.report = free_rank_aq(f, e, budget, threads);
                    row.q = row.report.q;
                    computed.push_back(row.report);
                    row.fedder = ((row.report.a_q >= 1) == rec.f_pure) ? Check::Pass : Check::Fail;
                    row.degree_bound = row.report.degree_bound_ok ? Check::Pass : Check::Fail;
                    if (!entry.sop_degrees.empty() &&
                        entry.sop_degrees.size() == static_cast<std::size_t>(d)) {
                        try {
                            std::vector<long long> params;
                            for (long long b : entry.sop_degrees) params.push_back(row.q * b);
                            ArtinianProfile prof = artinian_reduction(series, params);
                            row.symmetry = check_gorenstein_symmetry(prof) ? Check::Pass : Check::Fail;
                        } catch (const not_polynomial_error&) {
                            row.symmetry = Check::Fail;
                        }
                        if (rec.a_inv <= 0) {
                            bool both = true;
                            for (long long scale : {2LL, 3LL}) {
                                PartialSumBound pb = partial_sum_bound_from(
                                    rec.a_inv, row.q, row.report.a_q, ring->weights, deg_f,
                                    entry.sop_degrees, scale);
                                both = both && pb.holds;
                            }
                            row.partial_sum = both ? Check::Pass : Check::Fail;
                        }
                    }
                    // Finite-q slack only means something where a golden limit
                    // is pinned; corpus entries have no limit value to compare.
                    if (entry.golden_bound)
                        row.bound_respected =
                            (row.report.ratio <= eff_bound + Rational(2, row.q))
                                ? Check::Pass
                                : Check::Fail;
                } catch (const budget_exceeded_error& ex) {
                    budget_hit = true;
                    budget_reason = "budget: need " + std::to_string(ex.required) +
                                    " > " + std::to_string(ex.limit);
                    row.skipped = true;
                    row.skip_reason = budget_reason;
                }
                rec.rows.push_back(std::move(row));
            }
            rec.verdict = detail::verdict_from(rec.f_pure, rec.a_inv, computed);
        } catch (const std::exception& ex) {
            rec.error = ex.what();
        }
        rec.elapsed_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                             std::chrono::steady_clock::now() - t0)
                             .count();
        if (!rec.ok()) result.all_ok = false;
        result.records.push_back(std::move(rec));
    }
    return result;
}

inline std::string suite_csv(const std::vector<ExperimentRecord>& records) {
    std::string out =
        "family,index,p,e,q,a_q,ratio,a_inv,eprime,bound,fedder,lemma51,symmetry,thm54,"
        "golden_match\n";
    for (const auto& rec : records) {
        std::string prefix = family_token(rec.entry.family) + "," + rec.entry.index + "," +
                             std::to_string(rec.entry.prime) + ",";
        std::string invariants = std::to_string(rec.a_inv) + "," + to_string(rec.eprime) +
                                 "," + to_string(rec.bound);
        if (!rec.error.empty()) {
            out += prefix + "0,0,error,error," + invariants +
                   ",fail,fail,fail,fail,fail\n";
            continue;
        }
        for (const auto& row : rec.rows) {
            out += prefix + std::to_string(row.e) + "," + std::to_string(row.q) + ",";
            if (row.skipped) {
                out += "skip,skip";
            } else {
                out += std::to_string(row.report.a_q) + "," + to_string(row.report.ratio);
            }
            out += "," + invariants;
            out += "," + check_str(row.fedder);
            out += "," + check_str(row.degree_bound);
            out += "," + check_str(row.symmetry);
            out += "," + check_str(row.partial_sum);
            out += "," + check_str(rec.golden_match);
            out += "\n";
        }
    }
    return out;
}

inline nlohmann::ordered_json suite_json_obj(const std::vector<ExperimentRecord>& records) {
    using nlohmann::ordered_json;
    ordered_json root;
    root["schema"] = 1;
    ordered_json recs = ordered_json::array();
    for (const auto& rec : records) {
        ordered_json r;
        r["id"] = rec.entry.id();
        r["family"] = family_token(rec.entry.family);
        r["index"] = rec.entry.index;
        r["p"] = rec.entry.prime;
        r["equation"] = rec.entry.equation;
        ordered_json weights = ordered_json::array();
        for (long long w : rec.entry.weights()) weights.push_back(w);
        r["weights"] = weights;
        ordered_json sop = ordered_json::array();
        for (long long b : rec.entry.sop_degrees) sop.push_back(b);
        r["sop_degrees"] = sop;
        r["f_pure"] = rec.f_pure;
        r["a_inv"] = rec.a_inv;
        r["eprime"] = to_string(rec.eprime);
        r["bound"] = to_string(rec.bound);
        r["series"] = rec.series_display;
        r["verdict"] = to_string(rec.verdict);
        ordered_json golden;
        golden["s"] = rec.entry.golden_s ? ordered_json(to_string(*rec.entry.golden_s))
                                         : ordered_json(nullptr);
        golden["eprime"] = rec.entry.golden_eprime
                               ? ordered_json(to_string(*rec.entry.golden_eprime))
                               : ordered_json(nullptr);
        golden["a"] = rec.entry.golden_a ? ordered_json(*rec.entry.golden_a)
                                         : ordered_json(nullptr);
        golden["bound"] = rec.entry.golden_bound
                              ? ordered_json(to_string(*rec.entry.golden_bound))
                              : ordered_json(nullptr);
        golden["printed_eprime"] = rec.entry.printed_eprime
                                       ? ordered_json(to_string(*rec.entry.printed_eprime))
                                       : ordered_json(nullptr);
        r["golden"] = golden;
        ordered_json checks;
        checks["sop_valid"] = check_str(rec.sop_valid);
        checks["golden_match"] = check_str(rec.golden_match);
        r["checks"] = checks;
        ordered_json rows = ordered_json::array();
        for (const auto& row : rec.rows) {
            ordered_json j;
            j["e"] = row.e;
            j["q"] = row.q;
            j["skipped"] = row.skipped;
            if (row.skipped) {
                j["skip_reason"] = row.skip_reason;
            } else {
                j["a_q"] = row.report.a_q;
                j["ratio"] = to_string(row.report.ratio);
                j["blocks"] = row.report.block_count;
                ordered_json profile;
                for (const auto& [deg, cnt] : row.report.degree_profile)
                    profile[std::to_string(deg)] = cnt;
                j["profile"] = profile;
                ordered_json rc;
                rc["fedder"] = check_str(row.fedder);
                rc["lemma51"] = check_str(row.degree_bound);
                rc["symmetry"] = check_str(row.symmetry);
                rc["thm54"] = check_str(row.partial_sum);
                rc["bound_respected"] = check_str(row.bound_respected);
                j["checks"] = rc;
            }
            rows.push_back(j);
        }
        r["rows"] = rows;
        r["error"] = rec.error.empty() ? ordered_json(nullptr) : ordered_json(rec.error);
        recs.push_back(r);
    }
    root["records"] = recs;
    return root;
}

inline std::string suite_json(const std::vector<ExperimentRecord>& records) {
    return suite_json_obj(records).dump(2) + "\n";
}

} // namespace fsig
