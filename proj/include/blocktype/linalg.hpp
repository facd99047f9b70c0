#pragma once

// Exact linear algebra over Rational: dense reduced row echelon form with a
// deterministic pivot rule, kernel bases, and an incremental sparse echelon
// structure used by the windowed cohomology solvers.

#include <algorithm>
#include <cstddef>
#include <map>
#include <utility>
#include <vector>

#include "blocktype/rational.hpp"

namespace blocktype::linalg {

using Vec = std::vector<Rational>;
using Matrix = std::vector<Vec>;

/// In-place reduced row echelon form. Pivot rule: first nonzero column,
/// first nonzero row in that column. Returns the pivot columns in order.
inline std::vector<std::size_t> rref(Matrix& m) {
    std::vector<std::size_t> pivots;
    if (m.empty()) return pivots;
    const std::size_t rows = m.size(), cols = m[0].size();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t pr = r;
        while (pr < rows && m[pr][c] == 0) ++pr;
        if (pr == rows) continue;
        std::swap(m[r], m[pr]);
        const Rational inv = Rational(1) / m[r][c];
        for (std::size_t j = c; j < cols; ++j) m[r][j] *= inv;
        for (std::size_t k = 0; k < rows; ++k) {
            if (k == r || m[k][c] == 0) continue;
            const Rational f = m[k][c];
            for (std::size_t j = c; j < cols; ++j) m[k][j] -= f * m[r][j];
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

inline std::size_t rank(Matrix m) { return rref(m).size(); }

/// Basis of {x : m x = 0} read off the reduced echelon form: one vector per
/// free column, with value 1 at the free column.
inline Matrix nullspace(Matrix m) {
    if (m.empty()) return {};
    const std::size_t cols = m[0].size();
    const std::vector<std::size_t> pivots = rref(m);
    std::vector<bool> is_pivot(cols, false);
    for (std::size_t c : pivots) is_pivot[c] = true;
    Matrix basis;
    for (std::size_t f = 0; f < cols; ++f) {
        if (is_pivot[f]) continue;
        Vec v(cols, Rational(0));
        v[f] = 1;
        for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m[r][f];
        basis.push_back(std::move(v));
    }
    return basis;
}

/// Reduce v against rows already in reduced echelon form (pivot columns as
/// returned by rref). v is replaced by its canonical coset remainder.
inline void reduce_mod(const Matrix& rref_rows, const std::vector<std::size_t>& pivots,
                       Vec& v) {
    for (std::size_t r = 0; r < pivots.size(); ++r) {
        const Rational f = v[pivots[r]];
        if (f == 0) continue;
        for (std::size_t j = 0; j < v.size(); ++j) v[j] -= f * rref_rows[r][j];
    }
}

/// Sparse row: sorted (column, nonzero value) pairs.
using SparseRow = std::vector<std::pair<std::size_t, Rational>>;

inline SparseRow sparse_axpy(const SparseRow& x, const Rational& f, const SparseRow& y) {
    // x + f*y, both sorted by column.
    SparseRow out;
    out.reserve(x.size() + y.size());
    std::size_t i = 0, j = 0;
    while (i < x.size() || j < y.size()) {
        if (j == y.size() || (i < x.size() && x[i].first < y[j].first)) {
            out.push_back(x[i++]);
        } else if (i == x.size() || y[j].first < x[i].first) {
            out.emplace_back(y[j].first, f * y[j].second);
            ++j;
        } else {
            Rational v = x[i].second + f * y[j].second;
            if (v != 0) out.emplace_back(x[i].first, std::move(v));
            ++i;
            ++j;
        }
    }
    return out;
}

/// Incremental echelon basis of the row space of a (large, sparse) matrix.
/// Rows are fed one at a time; redundant rows are discarded on arrival, so
/// memory stays bounded by rank * row length.
class SparseEchelon {
public:
    explicit SparseEchelon(std::size_t ncols) : ncols_(ncols) {}

    /// Reduce `row` against the current pivots and insert the remainder if
    /// nonzero. Returns true when the row was independent.
    bool add_row(SparseRow row) {
        reduce(row);
        if (row.empty()) return false;
        const Rational inv = Rational(1) / row.front().second;
        for (auto& [c, v] : row) v *= inv;
        pivot_rows_.emplace(row.front().first, std::move(row));
        return true;
    }

    /// Reduce `row` in place against the pivot rows (forward elimination only).
    void reduce(SparseRow& row) const {
        std::size_t scan = 0;
        while (scan < row.size()) {
            auto it = pivot_rows_.find(row[scan].first);
            if (it == pivot_rows_.end()) {
                ++scan;
                continue;
            }
            row = sparse_axpy(row, -row[scan].second, it->second);
            // Columns before `scan` are untouched: pivot rows start at their
            // pivot column and earlier entries of `row` have no pivot.
        }
    }

    std::size_t rank() const { return pivot_rows_.size(); }
    std::size_t ncols() const { return ncols_; }

    /// Back-substitute so every pivot column appears in exactly one row.
    void make_reduced() {
        for (auto it = pivot_rows_.rbegin(); it != pivot_rows_.rend(); ++it) {
            const std::size_t pc = it->first;
            for (auto& [c, row] : pivot_rows_) {
                if (c >= pc) break;
                for (std::size_t k = 1; k < row.size(); ++k) {
                    if (row[k].first == pc) {
                        row = sparse_axpy(row, -row[k].second, it->second);
                        break;
                    }
                    if (row[k].first > pc) break;
                }
            }
        }
    }

    /// Kernel basis (dense), one vector per free column. Calls make_reduced.
    Matrix kernel() {
        make_reduced();
        std::vector<bool> is_pivot(ncols_, false);
        for (const auto& [c, row] : pivot_rows_) is_pivot[c] = true;
        Matrix basis;
        for (std::size_t f = 0; f < ncols_; ++f) {
            if (is_pivot[f]) continue;
            Vec v(ncols_, Rational(0));
            v[f] = 1;
            for (const auto& [c, row] : pivot_rows_)
                for (std::size_t k = 1; k < row.size(); ++k) {
                    if (row[k].first > f) break;
                    if (row[k].first == f) {
                        v[c] = -row[k].second;
                        break;
                    }
                }
            basis.push_back(std::move(v));
        }
        return basis;
    }

private:
    std::size_t ncols_;
    std::map<std::size_t, SparseRow> pivot_rows_;  // keyed by pivot column
};

}  // namespace blocktype::linalg
