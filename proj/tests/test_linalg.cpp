#include <catch2/catch.hpp>

#include <fsig/linalg.hpp>

#include "oracles.hpp"

using namespace fsig;

namespace {

MatrixFp identity(std::size_t n, std::uint32_t p, MatrixRep rep = MatrixRep::Auto) {
    std::vector<Triplet> t;
    for (std::size_t i = 0; i < n; ++i)
        t.emplace_back(static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(i), 1);
    return MatrixFp::from_triplets(n, n, p, std::move(t), rep);
}

MatrixFp random_matrix(oracles::TestRng& rng, std::size_t rows, std::size_t cols,
                       std::uint32_t p, double density, MatrixRep rep) {
    std::vector<Triplet> t;
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c)
            if (rng.below(1000) < static_cast<std::uint64_t>(density * 1000))
                t.emplace_back(static_cast<std::uint32_t>(r), static_cast<std::uint32_t>(c),
                               static_cast<std::uint32_t>(rng.below(p)));
    return MatrixFp::from_triplets(rows, cols, p, std::move(t), rep);
}

} // namespace

TEST_CASE("FpCtx reduction matches plain modular arithmetic", "[linalg]") {
    oracles::TestRng rng(3);
    for (std::uint32_t p : {2u, 3u, 97u, 65537u, 2147483629u}) {
        FpCtx F(p);
        for (int i = 0; i < 200; ++i) {
            std::uint64_t x = rng.next() >> 1; // below 2^63
            CHECK(F.reduce(x) == x % p);
        }
        for (std::uint32_t a = 1; a < std::min(p, 50u); ++a)
            CHECK(F.mul(a, F.inv(a)) == 1);
    }
}

TEST_CASE("rank examples", "[linalg]") {
    CHECK(identity(5, 7).rank() == 5);
    CHECK(identity(5, 2).rank() == 5);

    MatrixFp zero = MatrixFp::from_triplets(3, 3, 5, {});
    CHECK(zero.rank() == 0);
    CHECK(zero.kernel_basis().size() == 3);

    MatrixFp m = MatrixFp::from_dense(2, 2, 5, {1, 2, 2, 4});
    CHECK(m.rank() == 1);
}

TEST_CASE("kernel examples", "[linalg]") {
    CHECK(identity(4, 5).kernel_basis().empty());

    MatrixFp zero = MatrixFp::from_triplets(3, 3, 7, {});
    auto basis = zero.kernel_basis();
    REQUIRE(basis.size() == 3);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j)
            CHECK(basis[i][j] == (i == j ? 1u : 0u));

    MatrixFp row = MatrixFp::from_dense(1, 2, 2, {1, 1});
    auto k = row.kernel_basis();
    REQUIRE(k.size() == 1);
    CHECK(k[0] == std::vector<std::uint32_t>{1, 1});
}

TEST_CASE("rank + kernel size = cols and kernel vectors annihilate", "[linalg]") {
    oracles::TestRng rng(17);
    for (int iter = 0; iter < 30; ++iter) {
        std::uint32_t p = (iter % 2) ? 5 : 3;
        std::size_t rows = 1 + rng.below(12);
        std::size_t cols = 1 + rng.below(12);
        MatrixFp m = random_matrix(rng, rows, cols, p, 0.4, MatrixRep::Auto);
        auto basis = m.kernel_basis();
        CHECK(m.rank() + static_cast<long long>(basis.size()) ==
              static_cast<long long>(cols));
        FpCtx F(p);
        for (const auto& v : basis) {
            for (std::size_t r = 0; r < rows; ++r) {
                std::uint64_t acc = 0;
                for (std::size_t c = 0; c < cols; ++c)
                    acc += static_cast<std::uint64_t>(m.at(r, c)) * v[c];
                CHECK(F.reduce(acc) == 0);
            }
        }
    }
}

TEST_CASE("rank is invariant under row and column permutations", "[linalg]") {
    oracles::TestRng rng(29);
    for (int iter = 0; iter < 20; ++iter) {
        std::uint32_t p = 7;
        std::size_t n = 2 + rng.below(10);
        MatrixFp m = random_matrix(rng, n, n, p, 0.5, MatrixRep::Auto);
        std::vector<std::size_t> rp(n), cp(n);
        for (std::size_t i = 0; i < n; ++i) rp[i] = cp[i] = i;
        for (std::size_t i = 0; i + 1 < n; ++i) {
            std::swap(rp[i], rp[i + rng.below(n - i)]);
            std::swap(cp[i], cp[i + rng.below(n - i)]);
        }
        std::vector<Triplet> t;
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c = 0; c < n; ++c)
                if (auto v = m.at(r, c))
                    t.emplace_back(static_cast<std::uint32_t>(rp[r]),
                                   static_cast<std::uint32_t>(cp[c]), v);
        MatrixFp permuted = MatrixFp::from_triplets(n, n, p, std::move(t));
        CHECK(permuted.rank() == m.rank());
    }
}

TEST_CASE("dense and sparse elimination agree", "[linalg]") {
    oracles::TestRng rng(31);
    for (int iter = 0; iter < 18; ++iter) {
        std::uint32_t p = (iter % 3 == 0) ? 2 : ((iter % 3 == 1) ? 5 : 13);
        std::size_t rows = 1 + rng.below(200);
        std::size_t cols = 1 + rng.below(200);
        double density = (iter % 2) ? 0.03 : 0.3;
        std::vector<Triplet> t;
        for (std::size_t r = 0; r < rows; ++r)
            for (std::size_t c = 0; c < cols; ++c)
                if (rng.below(1000) < static_cast<std::uint64_t>(density * 1000))
                    t.emplace_back(static_cast<std::uint32_t>(r),
                                   static_cast<std::uint32_t>(c),
                                   static_cast<std::uint32_t>(rng.below(p)));
        MatrixFp dense = MatrixFp::from_triplets(rows, cols, p, t, MatrixRep::Dense);
        MatrixFp sparse = MatrixFp::from_triplets(rows, cols, p, t, MatrixRep::Sparse);
        CHECK(dense.is_sparse() == false);
        CHECK(sparse.is_sparse() == true);
        CHECK(dense.rank() == sparse.rank());
    }
}

TEST_CASE("representation is chosen by density", "[linalg]") {
    // 1 nonzero out of 16 entries: sparse. 8 out of 16: dense.
    MatrixFp sparse = MatrixFp::from_triplets(4, 4, 5, {{0, 0, 1}});
    CHECK(sparse.is_sparse());
    std::vector<Triplet> half;
    for (std::uint32_t i = 0; i < 4; ++i) {
        half.emplace_back(i, 0, 1);
        half.emplace_back(i, 1, 2);
    }
    MatrixFp dense = MatrixFp::from_triplets(4, 4, 5, std::move(half));
    CHECK(!dense.is_sparse());
}

TEST_CASE("rank_batch returns ranks in input order", "[linalg]") {
    std::vector<MatrixFp> mats;
    for (std::size_t n = 1; n <= 6; ++n) mats.push_back(identity(n, 3));
    auto ranks = rank_batch(mats, 4);
    REQUIRE(ranks.size() == 6);
    for (std::size_t n = 1; n <= 6; ++n) CHECK(ranks[n - 1] == static_cast<long long>(n));
}
