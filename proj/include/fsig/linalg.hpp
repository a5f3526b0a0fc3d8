#pragma once

#include <algorithm>
#include <cstdint>
#include <tuple>
#include <vector>

#include "errors.hpp"
#include "util.hpp"

namespace fsig {

// Modular arithmetic context with Barrett reduction; valid for any prime
// p < 2^31 and inputs below 2^63.
struct FpCtx {
    std::uint32_t p = 0;
    std::uint64_t barrett = 0;

    FpCtx() = default;
    explicit FpCtx(std::uint32_t prime)
        : p(prime), barrett(prime ? ~std::uint64_t{0} / prime : 0) {}

    std::uint32_t reduce(std::uint64_t x) const {
        std::uint64_t q = static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(x) * barrett) >> 64);
        std::uint64_t r = x - q * p;
        while (r >= p) r -= p;
        return static_cast<std::uint32_t>(r);
    }

    std::uint32_t add(std::uint32_t a, std::uint32_t b) const {
        std::uint32_t s = a + b;
        return s >= p ? s - p : s;
    }

    std::uint32_t sub(std::uint32_t a, std::uint32_t b) const {
        return a >= b ? a - b : a + p - b;
    }

    std::uint32_t neg(std::uint32_t a) const { return a == 0 ? 0 : p - a; }

    std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
        return reduce(static_cast<std::uint64_t>(a) * b);
    }

    std::uint32_t pow(std::uint32_t a, std::uint64_t e) const {
        std::uint32_t acc = 1 % p;
        std::uint32_t base = a;
        while (e > 0) {
            if (e & 1) acc = mul(acc, base);
            e >>= 1;
            if (e) base = mul(base, base);
        }
        return acc;
    }

    std::uint32_t inv(std::uint32_t a) const {
        if (a == 0) throw error("division by zero mod p");
        return pow(a, p - 2);
    }
};

using Triplet = std::tuple<std::uint32_t, std::uint32_t, std::uint32_t>; // row, col, value

enum class MatrixRep { Auto, Dense, Sparse };

// Immutable matrix over F_p. Representation is picked at construction:
// sparse when fewer than 10% of the entries are nonzero, dense otherwise.
// Rank and kernel run genuinely different elimination code per representation.
class MatrixFp {
public:
    static MatrixFp from_dense(std::size_t rows, std::size_t cols, std::uint32_t p,
                               std::vector<std::uint32_t> values,
                               MatrixRep rep = MatrixRep::Auto) {
        if (values.size() != rows * cols) throw error("dense matrix size mismatch");
        FpCtx F(p);
        std::size_t nnz = 0;
        for (auto& v : values) {
            v = F.reduce(v);
            if (v) ++nnz;
        }
        MatrixFp m(rows, cols, p);
        if (pick_dense(rep, nnz, rows, cols)) {
            m.dense_ = true;
            m.dense_data_ = std::move(values);
        } else {
            m.dense_ = false;
            m.sparse_.reserve(nnz);
            for (std::size_t r = 0; r < rows; ++r)
                for (std::size_t c = 0; c < cols; ++c)
                    if (std::uint32_t v = values[r * cols + c])
                        m.sparse_.emplace_back(static_cast<std::uint32_t>(r),
                                               static_cast<std::uint32_t>(c), v);
        }
        return m;
    }

    static MatrixFp from_triplets(std::size_t rows, std::size_t cols, std::uint32_t p,
                                  std::vector<Triplet> trips,
                                  MatrixRep rep = MatrixRep::Auto) {
        FpCtx F(p);
        std::sort(trips.begin(), trips.end(), [](const Triplet& a, const Triplet& b) {
            return std::pair{std::get<0>(a), std::get<1>(a)} <
                   std::pair{std::get<0>(b), std::get<1>(b)};
        });
        std::vector<Triplet> merged;
        merged.reserve(trips.size());
        for (const auto& t : trips) {
            auto [r, c, v] = t;
            if (r >= rows || c >= cols) throw error("triplet out of range");
            if (!merged.empty() && std::get<0>(merged.back()) == r &&
                std::get<1>(merged.back()) == c) {
                std::get<2>(merged.back()) =
                    F.add(std::get<2>(merged.back()), F.reduce(v));
            } else {
                merged.emplace_back(r, c, F.reduce(v));
            }
        }
        merged.erase(std::remove_if(merged.begin(), merged.end(),
                                    [](const Triplet& t) { return std::get<2>(t) == 0; }),
                     merged.end());
        MatrixFp m(rows, cols, p);
        if (pick_dense(rep, merged.size(), rows, cols)) {
            m.dense_ = true;
            m.dense_data_.assign(rows * cols, 0);
            for (const auto& [r, c, v] : merged) m.dense_data_[static_cast<std::size_t>(r) * cols + c] = v;
        } else {
            m.dense_ = false;
            m.sparse_ = std::move(merged);
        }
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::uint32_t prime() const { return F_.p; }
    bool is_sparse() const { return !dense_; }

    std::size_t nnz() const {
        if (!dense_) return sparse_.size();
        std::size_t n = 0;
        for (auto v : dense_data_)
            if (v) ++n;
        return n;
    }

    std::uint32_t at(std::size_t r, std::size_t c) const {
        if (dense_) return dense_data_[r * cols_ + c];
        for (const auto& [tr, tc, tv] : sparse_)
            if (tr == r && tc == c) return tv;
        return 0;
    }

    // Rank via Gaussian elimination, pivoting on the first nonzero entry per
    // column; fully deterministic.
    long long rank() const { return dense_ ? rank_dense() : rank_sparse(); }

    // Echelon basis of the right kernel, ordered by free column; size is
    // always cols - rank.
    std::vector<std::vector<std::uint32_t>> kernel_basis() const;

private:
    MatrixFp(std::size_t rows, std::size_t cols, std::uint32_t p)
        : rows_(rows), cols_(cols), F_(p) {}

    static bool pick_dense(MatrixRep rep, std::size_t nnz, std::size_t rows,
                           std::size_t cols) {
        if (rep == MatrixRep::Dense) return true;
        if (rep == MatrixRep::Sparse) return false;
        return nnz * 10 >= rows * cols;
    }

    long long rank_dense() const {
        std::vector<std::uint32_t> a = dense_data_;
        return dense_elimination(a, rows_, cols_, F_, nullptr);
    }

    long long rank_sparse() const;

    // In-place row echelon; returns the rank. When pivot_cols is non-null it
    // records the pivot column of each pivot row.
    static long long dense_elimination(std::vector<std::uint32_t>& a, std::size_t rows,
                                       std::size_t cols, const FpCtx& F,
                                       std::vector<std::size_t>* pivot_cols) {
        std::size_t rank = 0;
        for (std::size_t col = 0; col < cols && rank < rows; ++col) {
            std::size_t piv = rows;
            for (std::size_t r = rank; r < rows; ++r) {
                if (a[r * cols + col]) {
                    piv = r;
                    break;
                }
            }
            if (piv == rows) continue;
            if (piv != rank)
                std::swap_ranges(a.begin() + static_cast<std::ptrdiff_t>(piv * cols),
                                 a.begin() + static_cast<std::ptrdiff_t>((piv + 1) * cols),
                                 a.begin() + static_cast<std::ptrdiff_t>(rank * cols));
            std::uint32_t* prow = &a[rank * cols];
            std::uint32_t inv = F.inv(prow[col]);
            if (inv != 1)
                for (std::size_t j = col; j < cols; ++j) prow[j] = F.mul(prow[j], inv);
            for (std::size_t r = rank + 1; r < rows; ++r) {
                std::uint32_t* row = &a[r * cols];
                std::uint32_t m = row[col];
                if (!m) continue;
                std::uint32_t mm = F.neg(m);
                for (std::size_t j = col; j < cols; ++j)
                    row[j] = F.reduce(row[j] + static_cast<std::uint64_t>(mm) * prow[j]);
            }
            if (pivot_cols) pivot_cols->push_back(col);
            ++rank;
        }
        return static_cast<long long>(rank);
    }

    std::size_t rows_, cols_;
    FpCtx F_;
    bool dense_ = true;
    std::vector<std::uint32_t> dense_data_;
    std::vector<Triplet> sparse_;
};

inline long long MatrixFp::rank_sparse() const {
    // Rows as sorted (col, value) vectors, eliminated by merge.
    using Row = std::vector<std::pair<std::uint32_t, std::uint32_t>>;
    std::vector<Row> rows(rows_);
    for (const auto& [r, c, v] : sparse_) rows[r].emplace_back(c, v);

    auto entry_at = [](const Row& row, std::uint32_t col) -> std::uint32_t {
        auto it = std::lower_bound(row.begin(), row.end(), col,
                                   [](const auto& e, std::uint32_t c) { return e.first < c; });
        return (it != row.end() && it->first == col) ? it->second : 0;
    };

    std::size_t rank = 0;
    for (std::uint32_t col = 0; col < cols_ && rank < rows_; ++col) {
        std::size_t piv = rows_;
        for (std::size_t r = rank; r < rows_; ++r) {
            if (entry_at(rows[r], col)) {
                piv = r;
                break;
            }
        }
        if (piv == rows_) continue;
        std::swap(rows[piv], rows[rank]);
        Row& prow = rows[rank];
        std::uint32_t inv = F_.inv(entry_at(prow, col));
        if (inv != 1)
            for (auto& [c, v] : prow) v = F_.mul(v, inv);
        for (std::size_t r = rank + 1; r < rows_; ++r) {
            std::uint32_t m = entry_at(rows[r], col);
            if (!m) continue;
            std::uint32_t mm = F_.neg(m);
            Row merged;
            merged.reserve(rows[r].size() + prow.size());
            auto it = rows[r].begin();
            auto jt = prow.begin();
            while (it != rows[r].end() || jt != prow.end()) {
                if (jt == prow.end() || (it != rows[r].end() && it->first < jt->first)) {
                    merged.push_back(*it++);
                } else if (it == rows[r].end() || jt->first < it->first) {
                    merged.emplace_back(jt->first, F_.mul(mm, jt->second));
                    ++jt;
                } else {
                    std::uint32_t v = F_.reduce(it->second +
                                                static_cast<std::uint64_t>(mm) * jt->second);
                    if (v) merged.emplace_back(it->first, v);
                    ++it;
                    ++jt;
                }
            }
            rows[r] = std::move(merged);
        }
        ++rank;
    }
    return static_cast<long long>(rank);
}

inline std::vector<std::vector<std::uint32_t>> MatrixFp::kernel_basis() const {
    // Reduced row echelon over a dense working copy; kernel vectors read off
    // the free columns in ascending order.
    std::vector<std::uint32_t> a;
    if (dense_) {
        a = dense_data_;
    } else {
        a.assign(rows_ * cols_, 0);
        for (const auto& [r, c, v] : sparse_) a[static_cast<std::size_t>(r) * cols_ + c] = v;
    }
    std::vector<std::size_t> pivot_cols;
    std::size_t rank =
        static_cast<std::size_t>(dense_elimination(a, rows_, cols_, F_, &pivot_cols));
    for (std::size_t i = rank; i-- > 0;) {
        std::size_t col = pivot_cols[i];
        for (std::size_t r = 0; r < i; ++r) {
            std::uint32_t m = a[r * cols_ + col];
            if (!m) continue;
            std::uint32_t mm = F_.neg(m);
            for (std::size_t j = col; j < cols_; ++j)
                a[r * cols_ + j] =
                    F_.reduce(a[r * cols_ + j] + static_cast<std::uint64_t>(mm) * a[i * cols_ + j]);
        }
    }
    std::vector<bool> is_pivot(cols_, false);
    for (std::size_t c : pivot_cols) is_pivot[c] = true;
    std::vector<std::vector<std::uint32_t>> basis;
    basis.reserve(cols_ - rank);
    for (std::size_t free_col = 0; free_col < cols_; ++free_col) {
        if (is_pivot[free_col]) continue;
        std::vector<std::uint32_t> v(cols_, 0);
        v[free_col] = 1;
        for (std::size_t i = 0; i < rank; ++i)
            v[pivot_cols[i]] = F_.neg(a[i * cols_ + free_col]);
        basis.push_back(std::move(v));
    }
    return basis;
}

// Ranks of independent matrices, evaluated in parallel and returned in input
// order.
inline std::vector<long long> rank_batch(const std::vector<MatrixFp>& mats,
                                         int threads = 0) {
    std::vector<long long> out(mats.size(), 0);
    parallel_for(mats.size(), thread_count(threads),
                 [&](std::size_t i) { out[i] = mats[i].rank(); });
    return out;
}

} // namespace fsig
