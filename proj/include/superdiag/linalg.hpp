#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "numbers.hpp"

namespace superdiag {

struct InvariantViolation : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Sparse vector: (coordinate, value) pairs sorted by coordinate, no zeros.
using SparseVector = std::vector<std::pair<std::uint32_t, Rational>>;

inline Rational sparse_get(const SparseVector& v, std::uint32_t idx) {
    auto it = std::lower_bound(v.begin(), v.end(), idx,
                               [](const auto& e, std::uint32_t k) { return e.first < k; });
    return (it != v.end() && it->first == idx) ? it->second : Rational(0);
}

// a - f * b
inline SparseVector sparse_axpy(const SparseVector& a, const Rational& f, const SparseVector& b) {
    SparseVector r;
    r.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
            r.push_back(a[i++]);
        } else if (i == a.size() || b[j].first < a[i].first) {
            r.emplace_back(b[j].first, -f * b[j].second);
            ++j;
        } else {
            Rational v = a[i].second - f * b[j].second;
            if (sgn(v) != 0) r.emplace_back(a[i].first, std::move(v));
            ++i;
            ++j;
        }
    }
    return r;
}

/* Sparse rational matrix stored by columns. */
class RationalMatrix {
public:
    RationalMatrix() = default;
    RationalMatrix(std::size_t rows, std::size_t cols) : rows_(rows), columns_(cols) {}

    static RationalMatrix identity(std::size_t n) {
        RationalMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m.columns_[i].emplace_back(std::uint32_t(i), Rational(1));
        return m;
    }

    static RationalMatrix from_dense(const std::vector<std::vector<Rational>>& rows) {
        const std::size_t r = rows.size(), c = r ? rows[0].size() : 0;
        RationalMatrix m(r, c);
        for (std::size_t i = 0; i < r; ++i) {
            if (rows[i].size() != c) throw std::invalid_argument("ragged dense matrix");
            for (std::size_t j = 0; j < c; ++j)
                if (sgn(rows[i][j]) != 0) m.columns_[j].emplace_back(std::uint32_t(i), rows[i][j]);
        }
        return m;
    }

    static RationalMatrix from_columns(std::size_t rows, std::vector<SparseVector> cols) {
        RationalMatrix m;
        m.rows_ = rows;
        for (auto& c : cols)
            for (auto& [i, v] : c)
                if (i >= rows) throw std::out_of_range("column entry outside matrix");
        m.columns_ = std::move(cols);
        return m;
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return columns_.size(); }
    const SparseVector& column(std::size_t j) const { return columns_.at(j); }
    const std::vector<SparseVector>& columns() const noexcept { return columns_; }

    Rational at(std::size_t i, std::size_t j) const { return sparse_get(columns_.at(j), std::uint32_t(i)); }

    void set(std::size_t i, std::size_t j, const Rational& v) {
        if (i >= rows_) throw std::out_of_range("row index");
        auto& col = columns_.at(j);
        auto it = std::lower_bound(col.begin(), col.end(), std::uint32_t(i),
                                   [](const auto& e, std::uint32_t k) { return e.first < k; });
        if (it != col.end() && it->first == i) {
            if (sgn(v) == 0)
                col.erase(it);
            else
                it->second = v;
        } else if (sgn(v) != 0) {
            col.insert(it, {std::uint32_t(i), v});
        }
    }

    RationalMatrix transpose() const {
        RationalMatrix t(cols(), rows());
        for (std::size_t j = 0; j < cols(); ++j)
            for (auto& [i, v] : columns_[j]) t.columns_[i].emplace_back(std::uint32_t(j), v);
        return t;
    }

    friend bool operator==(const RationalMatrix&, const RationalMatrix&) = default;

private:
    std::size_t rows_ = 0;
    std::vector<SparseVector> columns_;
};

/* Basis of a subspace W of Q^dim in reduced echelon form: vector i has a 1
 * at coordinate pivots[i], and no vector has a nonzero entry at any other
 * vector's pivot.  Vectors are sorted by pivot.
 */
struct ReducedBasis {
    std::size_t dim = 0;
    std::vector<std::uint32_t> pivots;
    std::vector<SparseVector> vectors;

    std::size_t rank() const noexcept { return vectors.size(); }

    RationalMatrix as_matrix() const { return RationalMatrix::from_columns(dim, vectors); }
};

/* Incremental exact Gauss-Jordan elimination.  Vectors are inserted one at
 * a time; the stored set stays fully reduced, so reducing a new vector takes
 * a single pass over its pivot entries.  New pivots are chosen to limit
 * fill-in (fewest stored vectors touching the column, ties by index), which
 * keeps results deterministic for a fixed insertion order.
 */
class IncrementalBasis {
public:
    explicit IncrementalBasis(std::size_t dim)
        : dim_(dim), pivot_owner_(dim, -1), col_users_(dim), scratch_(dim), touched_flag_(dim, 0) {}

    std::size_t dim() const noexcept { return dim_; }
    std::size_t rank() const noexcept { return rows_.size(); }
    bool full() const noexcept { return rows_.size() == dim_; }

    /// Reduce v against the current basis (result has no pivot coordinates).
    SparseVector reduce(const SparseVector& v) {
        touched_.clear();
        for (auto& [c, val] : v) {
            if (c >= dim_) throw std::out_of_range("vector coordinate outside space");
            accumulate(c, val);
        }
        for (auto& [c, val] : v) {
            int owner = pivot_owner_[c];
            if (owner < 0) continue;
            // v[c] may have been changed by earlier subtractions only if c
            // were a non-pivot coordinate of another row, which it is not.
            Rational f = scratch_[c];
            if (sgn(f) == 0) continue;
            for (auto& [rc, rv] : rows_[owner]) {
                if (rc == c) continue;
                Rational delta = f * rv;
                accumulate_sub(rc, delta);
            }
            scratch_[c] = 0;
        }
        SparseVector out;
        std::sort(touched_.begin(), touched_.end());
        for (auto c : touched_) {
            if (sgn(scratch_[c]) != 0) out.emplace_back(c, scratch_[c]);
            scratch_[c] = 0;
            touched_flag_[c] = 0;
        }
        touched_.clear();
        return out;
    }

    /// Returns true when v was independent of the current span.
    bool insert(const SparseVector& v) {
        if (full()) return false;
        SparseVector r = reduce(v);
        if (r.empty()) return false;

        // pick the pivot column
        std::size_t best = 0;
        for (std::size_t i = 1; i < r.size(); ++i) {
            auto ci = r[i].first, cb = r[best].first;
            if (col_users_[ci].size() < col_users_[cb].size()) best = i;
        }
        const std::uint32_t pc = r[best].first;
        const Rational inv = 1 / r[best].second;
        for (auto& e : r) e.second *= inv;

        const int new_row = static_cast<int>(rows_.size());
        // eliminate pc from the stored rows
        for (int row : col_users_[pc]) {
            auto& target = rows_[row];
            Rational f = sparse_get(target, pc);
            if (sgn(f) == 0) continue;
            SparseVector updated = sparse_axpy(target, f, r);
            // register fresh non-pivot columns
            std::size_t i = 0;
            for (auto& [c, val] : updated) {
                while (i < target.size() && target[i].first < c) ++i;
                if (!(i < target.size() && target[i].first == c)) col_users_[c].push_back(row);
            }
            target = std::move(updated);
        }
        col_users_[pc].clear();
        col_users_[pc].shrink_to_fit();
        for (auto& [c, val] : r)
            if (c != pc) col_users_[c].push_back(new_row);
        pivot_owner_[pc] = new_row;
        pivot_col_.push_back(pc);
        rows_.push_back(std::move(r));
        return true;
    }

    ReducedBasis finish() const {
        std::vector<std::size_t> order(rows_.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        std::sort(order.begin(), order.end(),
                  [&](std::size_t a, std::size_t b) { return pivot_col_[a] < pivot_col_[b]; });
        ReducedBasis b;
        b.dim = dim_;
        for (auto i : order) {
            b.pivots.push_back(pivot_col_[i]);
            b.vectors.push_back(rows_[i]);
        }
        return b;
    }

private:
    void accumulate(std::uint32_t c, const Rational& v) {
        if (!touched_flag_[c]) {
            touched_flag_[c] = 1;
            touched_.push_back(c);
        }
        scratch_[c] += v;
    }
    void accumulate_sub(std::uint32_t c, const Rational& v) {
        if (!touched_flag_[c]) {
            touched_flag_[c] = 1;
            touched_.push_back(c);
        }
        scratch_[c] -= v;
    }

    std::size_t dim_;
    std::vector<SparseVector> rows_;
    std::vector<std::uint32_t> pivot_col_;
    std::vector<int> pivot_owner_;
    std::vector<std::vector<int>> col_users_;  // may hold stale entries
    std::vector<Rational> scratch_;
    std::vector<char> touched_flag_;
    std::vector<std::uint32_t> touched_;
};

struct RrefResult {
    std::size_t rank = 0;
    std::vector<std::uint32_t> pivot_rows;  // leading coordinate of each basis column
    std::vector<std::uint32_t> pivot_cols;  // columns of M that were independent, in order
    RationalMatrix basis;                   // reduced basis of the column space
};

/// Exact reduction of the column space of M.
inline RrefResult rref(const RationalMatrix& m) {
    IncrementalBasis inc(m.rows());
    RrefResult res;
    for (std::size_t j = 0; j < m.cols(); ++j)
        if (inc.insert(m.column(j))) res.pivot_cols.push_back(std::uint32_t(j));
    auto b = inc.finish();
    res.rank = b.rank();
    res.pivot_rows = b.pivots;
    res.basis = b.as_matrix();
    return res;
}

inline std::size_t rank(const RationalMatrix& m) { return rref(m).rank; }

using LinearAction = std::function<SparseVector(const SparseVector&)>;

/* Trace of A restricted to span(basis).  With a reduced basis the pivot-row
 * system B[R] C = (A B)[R] has B[R] = I, so C[i][j] = (A b_j)[pivot_i].
 * Every column of A B is checked to lie in the span; failure means W is not
 * A-stable.
 */
inline Rational restricted_trace(const ReducedBasis& basis, const LinearAction& action) {
    Rational trace = 0;
    std::vector<int> owner(basis.dim, -1);
    for (std::size_t i = 0; i < basis.pivots.size(); ++i) owner[basis.pivots[i]] = int(i);
    for (std::size_t j = 0; j < basis.rank(); ++j) {
        SparseVector image = action(basis.vectors[j]);
        SparseVector residual = image;
        for (auto& [c, val] : image) {
            int i = owner[c];
            if (i < 0) continue;
            if (std::size_t(i) == j) trace += val;
            residual = sparse_axpy(residual, val, basis.vectors[i]);
        }
        if (!residual.empty())
            throw InvariantViolation("restricted_trace: subspace is not stable under the action");
    }
    return trace;
}

/// General form: B must have full column rank; its columns span W.
inline Rational restricted_trace(const RationalMatrix& b, const LinearAction& action) {
    IncrementalBasis inc(b.rows());
    for (auto& col : b.columns())
        if (!inc.insert(col)) throw std::invalid_argument("restricted_trace: basis is not full column rank");
    return restricted_trace(inc.finish(), action);
}

}  // namespace superdiag
