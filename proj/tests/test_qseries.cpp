#include <catch2/catch.hpp>

#include <fsig/qseries.hpp>

#include "oracles.hpp"

using namespace fsig;

namespace {

// Hypersurface Hilbert function by enumeration: monomials of weighted degree
// n whose exponent in variable `var` stays below `cap` (the quotient by a
// pure-power leading term of degree cap * w_var).
long long hyper_count(const std::vector<long long>& weights, long long deg, int var,
                      long long cap) {
    std::vector<long long> caps(weights.size(), 0);
    if (var >= 0) caps[static_cast<std::size_t>(var)] = cap;
    return oracles::count_monomials(weights, deg, caps);
}

} // namespace

TEST_CASE("ci_series builds the displayed rational form", "[qseries]") {
    long long n = 2;
    RationalSeries s = ci_series({n + 1, n + 1, 2}, {2 * (n + 1)});
    CHECK(s.denom_factors == std::vector<long long>{3, 3, 2});
    REQUIRE(s.numerator.size() == 7);
    CHECK(s.numerator.front() == 1);
    CHECK(s.numerator.back() == -1);
    CHECK(render_series(s) == "(1 - t^6)/((1 - t^3)(1 - t^3)(1 - t^2))");

    RationalSeries poly_ring = ci_series({1, 1, 1}, {});
    CHECK(render_series(poly_ring) == "1/((1 - t^1)(1 - t^1)(1 - t^1))");
    CHECK(poly_ring.numerator == std::vector<BigInt>{1});

    CHECK_THROWS_AS(ci_series({}, {}), invalid_degrees_error);
    CHECK_THROWS_AS(ci_series({1}, {0}), invalid_degrees_error);
    CHECK_THROWS_AS(ci_series({1}, {2, 2}), invalid_degrees_error);
}

TEST_CASE("a_invariant equals its iterated form", "[qseries]") {
    for (long long n = 1; n <= 5; ++n) {
        RationalSeries s = ci_series({n + 1, n + 1, 2}, {2 * (n + 1)});
        CHECK(a_invariant(s) == -2);
        CHECK(a_invariant_iterated({n + 1, n + 1, 2}, {2 * (n + 1)}) == -2);
    }
    for (int d = 1; d <= 5; ++d) {
        std::vector<long long> w(static_cast<std::size_t>(d), 1);
        CHECK(a_invariant(ci_series(w, {})) == -d);
    }
    CHECK(a_invariant(ci_series({15, 10, 6}, {30})) == -1);

    SECTION("two-path consistency on random complete intersections") {
        oracles::TestRng rng(19);
        for (int iter = 0; iter < 200; ++iter) {
            std::size_t nv = 1 + rng.below(4);
            std::vector<long long> w(nv), d;
            for (auto& x : w) x = 1 + static_cast<long long>(rng.below(6));
            std::size_t nr = rng.below(nv + 1);
            for (std::size_t i = 0; i < nr; ++i)
                d.push_back(1 + static_cast<long long>(rng.below(12)));
            RationalSeries s = ci_series(w, d);
            CHECK(a_invariant(s) == a_invariant_iterated(w, d));
        }
    }
}

TEST_CASE("e_prime takes the exact limit", "[qseries]") {
    for (long long n = 1; n <= 4; ++n)
        CHECK(e_prime(ci_series({n + 1, n + 1, 2}, {2 * (n + 1)}), 2) == Rational(1, n + 1));
    for (int d = 1; d <= 4; ++d) {
        std::vector<long long> w(static_cast<std::size_t>(d), 1);
        CHECK(e_prime(ci_series(w, {}), d) == Rational(1));
    }
    for (long long n = 4; n <= 6; ++n)
        CHECK(e_prime(ci_series({n - 1, 2, n - 2}, {2 * (n - 1)}), 2) == Rational(1, n - 2));

    CHECK_THROWS_AS(e_prime(ci_series({1, 1}, {}), 1), pole_order_mismatch_error);
    try {
        e_prime(ci_series({1, 1}, {}), 1);
    } catch (const pole_order_mismatch_error& ex) {
        CHECK(ex.actual == 2);
        CHECK(ex.expected == 1);
    }

    SECTION("equals prod(d_i)/prod(w_j) on random complete intersections") {
        oracles::TestRng rng(37);
        for (int iter = 0; iter < 100; ++iter) {
            std::size_t nv = 1 + rng.below(4);
            std::vector<long long> w(nv), d;
            for (auto& x : w) x = 1 + static_cast<long long>(rng.below(5));
            std::size_t nr = rng.below(nv);
            BigInt dn = 1, wd = 1;
            for (std::size_t i = 0; i < nr; ++i) {
                d.push_back(1 + static_cast<long long>(rng.below(9)));
                dn *= d.back();
            }
            for (long long x : w) wd *= x;
            CHECK(e_prime(ci_series(w, d), static_cast<int>(nv - nr)) == Rational(dn, wd));
        }
    }
}

TEST_CASE("signature_bound closed form", "[qseries]") {
    for (long long n = 1; n <= 4; ++n)
        CHECK(signature_bound(-2, 2, Rational(1, n + 1)) == Rational(1, n + 1));
    CHECK(signature_bound(-1, 2, Rational(1, 30)) == Rational(1, 120));
    CHECK(signature_bound(-1, 1, Rational(1)) == Rational(1));
    CHECK(signature_bound(-2, 2, Rational(1)) == Rational(1));
    CHECK(signature_bound(-3, 3, Rational(1)) == Rational(9, 8));
    CHECK(signature_bound(-4, 4, Rational(1)) == Rational(4, 3));
    CHECK(signature_bound(0, 2, Rational(3)) == Rational(0));
    for (int d = 1; d <= 8; ++d) {
        Rational b = signature_bound(-d, d, Rational(1));
        CHECK(b >= 1);
        CHECK((b == 1) == (d <= 2));
    }
}

TEST_CASE("hilbert_coeffs expansion", "[qseries]") {
    auto coeffs = [](const RationalSeries& s, long long N) {
        std::vector<long long> v;
        for (const BigInt& c : hilbert_coeffs(s, N)) v.push_back(c.convert_to<long long>());
        return v;
    };
    CHECK(coeffs(ci_series({1, 1}, {}), 4) == std::vector<long long>{1, 2, 3, 4, 5});
    CHECK(coeffs(ci_series({2, 2, 2}, {4}), 4) == std::vector<long long>{1, 0, 3, 0, 5});
    CHECK(coeffs(ci_series({1}, {3}), 5) == std::vector<long long>{1, 1, 1, 0, 0, 0});

    SECTION("agrees with leading-term enumeration for one relation") {
        oracles::TestRng rng(41);
        for (int iter = 0; iter < 60; ++iter) {
            std::size_t nv = 1 + rng.below(3);
            std::vector<long long> w(nv);
            for (auto& x : w) x = 1 + static_cast<long long>(rng.below(4));
            int var = static_cast<int>(rng.below(nv));
            long long cap = 1 + static_cast<long long>(rng.below(5));
            long long D = cap * w[static_cast<std::size_t>(var)];
            RationalSeries s = ci_series(w, {D});
            auto h = hilbert_coeffs(s, 30);
            for (long long deg = 0; deg <= 30; ++deg) {
                CHECK(h[static_cast<std::size_t>(deg)] ==
                      BigInt(hyper_count(w, deg, var, cap)));
                CHECK(h[static_cast<std::size_t>(deg)] >= 0);
            }
        }
    }
}

TEST_CASE("artinian_reduction collapses the series to a finite profile", "[qseries]") {
    RationalSeries a1 = ci_series({2, 2, 2}, {4});

    SECTION("parameter degrees (2,2): quotient by the two weight-2 variables") {
        ArtinianProfile prof = artinian_reduction(a1, {2, 2});
        CHECK(prof.coeffs == std::vector<BigInt>{1, 0, 1});
        CHECK(prof.socle_degree == 2);
        // enumeration oracle: monomials outside (x^2, y, z), weights (2,2,2)
        for (long long deg = 0; deg <= 2; ++deg)
            CHECK(prof.coeffs[static_cast<std::size_t>(deg)] ==
                  BigInt(oracles::count_monomials({2, 2, 2}, deg, {2, 1, 1})));
    }
    SECTION("parameter degrees (2,4)") {
        ArtinianProfile prof = artinian_reduction(a1, {2, 4});
        CHECK(prof.coeffs == std::vector<BigInt>{1, 0, 2, 0, 1});
        CHECK(prof.socle_degree == 4);
        for (long long deg = 0; deg <= 4; ++deg)
            CHECK(prof.coeffs[static_cast<std::size_t>(deg)] ==
                  BigInt(oracles::count_monomials({2, 2, 2}, deg, {2, 1, 2})));
    }
    SECTION("parameter degrees (4,4)") {
        ArtinianProfile prof = artinian_reduction(a1, {4, 4});
        CHECK(prof.coeffs == std::vector<BigInt>{1, 0, 3, 0, 3, 0, 1});
        CHECK(prof.socle_degree == 6);
        for (long long deg = 0; deg <= 6; ++deg)
            CHECK(prof.coeffs[static_cast<std::size_t>(deg)] ==
                  BigInt(oracles::count_monomials({2, 2, 2}, deg, {2, 2, 2})));
    }
    SECTION("one-variable polynomial ring with parameter degree q") {
        for (long long q : {2, 3, 5, 9}) {
            ArtinianProfile prof = artinian_reduction(ci_series({1}, {}), {q});
            CHECK(prof.socle_degree == q - 1);
            CHECK(static_cast<long long>(prof.coeffs.size()) == q);
            for (const BigInt& c : prof.coeffs) CHECK(c == 1);
        }
    }
    SECTION("total mass identity") {
        ArtinianProfile prof = artinian_reduction(a1, {6, 10});
        // prod(rel degrees) * prod(param degrees) / prod(weights)
        CHECK(prof.total() == BigInt(4 * 6 * 10 / 8));
        CHECK(prof.socle_degree == -2 + 6 + 10);
    }
    SECTION("bad parameter degrees are rejected") {
        CHECK_THROWS_AS(artinian_reduction(a1, {3, 3}), not_polynomial_error);
        CHECK_THROWS_AS(artinian_reduction(a1, {2}), not_polynomial_error);
        CHECK_THROWS_AS(artinian_reduction(a1, {0, 2}), invalid_degrees_error);
    }
}

TEST_CASE("gorenstein symmetry check", "[qseries]") {
    CHECK(check_gorenstein_symmetry(std::vector<BigInt>{1, 0, 2, 0, 1}));
    CHECK(check_gorenstein_symmetry(std::vector<BigInt>{1, 1, 1, 1}));
    CHECK(!check_gorenstein_symmetry(std::vector<BigInt>{1, 2, 0}));
    CHECK(check_gorenstein_symmetry(artinian_reduction(ci_series({2, 2, 2}, {4}), {2, 4})));
}
