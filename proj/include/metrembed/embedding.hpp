#pragma once

#include <string>
#include <utility>
#include <vector>

#include "metrembed/numeric.hpp"

namespace metrembed {

// n x d matrix, one row per point, one column per l_inf coordinate.
// d = 0 is the null embedding.
template <class T>
struct EmbeddingMatrix {
    int n = 0, d = 0;
    std::vector<T> a;  // row-major

    EmbeddingMatrix() = default;
    EmbeddingMatrix(int n_, int d_) : n(n_), d(d_), a(static_cast<size_t>(n_) * d_, T(0)) {}

    T& at(int r, int c) { return a[static_cast<size_t>(r) * d + c]; }
    const T& at(int r, int c) const { return a[static_cast<size_t>(r) * d + c]; }

    // Index one past the last nonzero entry of the row.
    int support_len(int r) const {
        for (int c = d; c > 0; --c)
            if (!(at(r, c - 1) == T(0))) return c;
        return 0;
    }

    T linf_dist(int r1, int r2) const {
        T best(0), diff;
        const T* p1 = a.data() + static_cast<size_t>(r1) * d;
        const T* p2 = a.data() + static_cast<size_t>(r2) * d;
        for (int c = 0; c < d; ++c) {
            diff = p1[c] - p2[c];
            if constexpr (is_exact_v<T>) {
                mpq_abs(diff.get_mpq_t(), diff.get_mpq_t());
                if (diff > best) mpq_swap(best.get_mpq_t(), diff.get_mpq_t());
            } else {
                diff = abs_val(diff);
                if (diff > best) best = diff;
            }
        }
        return best;
    }

    // Appends the columns of `other` (same row count) to the right.
    void append_columns(const EmbeddingMatrix<T>& other) {
        if (other.n != n) throw size_mismatch("appending columns with different row counts");
        EmbeddingMatrix<T> out(n, d + other.d);
        for (int r = 0; r < n; ++r) {
            for (int c = 0; c < d; ++c) out.at(r, c) = at(r, c);
            for (int c = 0; c < other.d; ++c) out.at(r, d + c) = other.at(r, c);
        }
        *this = std::move(out);
    }

    // Subtracts the given row vector from every row (translation; preserves
    // all pairwise differences).
    void translate_to_zero(int row) {
        std::vector<T> off(a.begin() + static_cast<size_t>(row) * d,
                           a.begin() + static_cast<size_t>(row + 1) * d);
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < d; ++c) at(r, c) -= off[c];
    }
};

// Provenance of a tree-embedding column, for debugging and block audits.
struct ColumnInfo {
    int block = 0;        // 1-based layer in the prioritized composition
    std::string tag;      // recursion path, e.g. "LRh" / "fold"
};

}  // namespace metrembed
