#pragma once

#include <algorithm>
#include <vector>

#include "metrembed/beta.hpp"
#include "metrembed/embedding.hpp"
#include "metrembed/metric.hpp"
#include "metrembed/parallel.hpp"

namespace metrembed {

// General-metric l_inf embedding with one column per rank:
//   f_j(x) = d(x, S_{chi(j)-1} U {x_j}),   S_0 = {}, S_i = { x_j : j <= beta(i) }.
// Guarantees (audited, not trusted): Lipschitz columns, contraction at most
// 2*chi(j) on pairs whose smaller rank is j, and support of x_j inside the
// first beta(chi(j)) columns.
//
// d(x, S_{i}) is a prefix minimum over ranks, so the whole matrix is O(n^2)
// after the per-column levels are known.
template <class T>
EmbeddingMatrix<T> meta_embedding(const MetricSpace<T>& M, const PriorityOrdering& pi,
                                  const BetaSchedule& beta) {
    if (pi.n() != M.n) throw size_mismatch("ordering size != metric points");
    const int n = M.n;
    EmbeddingMatrix<T> F(n, n);
    std::vector<std::int64_t> prefix(n + 1, 0);  // prefix[j] = |S_{chi(j)-1}| = beta(chi(j)-1), capped at n
    for (int j = 1; j <= n; ++j) {
        int level = chi(beta, j);
        std::uint64_t b = level >= 2 ? beta.eval(level - 1) : 0;
        prefix[j] = static_cast<std::int64_t>(std::min<std::uint64_t>(b, static_cast<std::uint64_t>(n)));
    }
    parallel_for(n, [&](std::int64_t xx) {
        int x = static_cast<int>(xx);
        // Running minima d(x, {x_1..x_m}) over rank prefixes.
        std::vector<T> premin(n + 1);
        premin[0] = T(0);  // unused sentinel; prefix 0 is the empty set
        for (int m = 1; m <= n; ++m) {
            const T& dxm = M.at(x, pi.order[m - 1]);
            premin[m] = (m == 1) ? dxm : std::min(premin[m - 1], dxm);
        }
        for (int j = 1; j <= n; ++j) {
            const T& dxj = M.at(x, pi.order[j - 1]);
            std::int64_t m = std::min<std::int64_t>(prefix[j], n);
            F.at(x, j - 1) = (m >= 1) ? std::min(premin[m], dxj) : dxj;
        }
    });
    return F;
}

// Isometric embedding of the n-point uniform metric (scaled clique) into
// ceil(log2 n) coordinates: distinct binary codewords times the scale.
template <class T>
EmbeddingMatrix<T> uniform_clique_embedding(int n, const T& scale) {
    if (n < 1) throw bad_parameter("clique embedding needs n >= 1");
    int d = 0;
    while ((1ll << d) < n) ++d;
    EmbeddingMatrix<T> F(n, d);
    for (int v = 0; v < n; ++v)
        for (int c = 0; c < d; ++c)
            if ((v >> c) & 1) F.at(v, c) = scale;
    return F;
}

namespace reference {

// Direct evaluation of the definition: per column, min over the set
// S_{chi(j)-1} U {x_j}. Serial; the optimized prefix-minimum path must
// agree with this exactly.
template <class T>
EmbeddingMatrix<T> meta_embedding_naive(const MetricSpace<T>& M, const PriorityOrdering& pi,
                                        const BetaSchedule& beta) {
    const int n = M.n;
    EmbeddingMatrix<T> F(n, n);
    for (int j = 1; j <= n; ++j) {
        int level = chi(beta, j);
        std::uint64_t b = level >= 2 ? beta.eval(level - 1) : 0;
        std::vector<int> set;
        for (int r = 1; r <= n && static_cast<std::uint64_t>(r) <= b; ++r) set.push_back(pi.order[r - 1]);
        set.push_back(pi.order[j - 1]);
        for (int x = 0; x < n; ++x) {
            T best = M.at(x, set[0]);
            for (size_t s = 1; s < set.size(); ++s) best = std::min(best, M.at(x, set[s]));
            F.at(x, j - 1) = best;
        }
    }
    return F;
}

}  // namespace reference

}  // namespace metrembed
