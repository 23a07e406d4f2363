#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "metrembed/embedding.hpp"
#include "metrembed/tree.hpp"

namespace metrembed {

// Dimension constant of the terminal embedding: width <= ceil(a * log2 k),
// a = 2 / log2(3/2), from the recurrence width(k) <= width(ceil(2k/3)) + 2.
inline double tree_dim_constant() { return 2.0 / std::log2(1.5); }

inline int terminal_width_bound(int k) {
    if (k <= 1) return 0;
    return static_cast<int>(std::ceil(tree_dim_constant() * std::log2(static_cast<double>(k))));
}

// ---------------------------------------------------------------------------
// leafify: every terminal becomes a leaf, attached by a weight-0 dummy edge
// where needed. The metric on the original vertices is unchanged.

struct LeafifyResult {
    WeightedTree tree;            // extends the input; original ids preserved
    std::vector<int> terminals;   // K', aligned with the input K
};

inline LeafifyResult leafify_terminals(const WeightedTree& T, const std::vector<int>& K) {
    LeafifyResult res;
    res.tree = T;
    res.terminals.reserve(K.size());
    for (int t : K) {
        if (t < 0 || t >= T.n()) throw bad_parameter("terminal out of range");
        if (res.tree.degree(t) <= 1) {
            res.terminals.push_back(t);
        } else {
            int dummy = res.tree.add_vertex(/*aux=*/true);
            res.tree.add_edge(t, dummy, Rat(0));
            res.terminals.push_back(dummy);
        }
    }
    return res;
}

// ---------------------------------------------------------------------------
// Separator: a non-terminal vertex s whose removal splits the terminals into
// two sides of at most ceil(2k/3) each; whole components go to one side.
// Among valid vertices we pick the one minimizing the larger side's terminal
// count, ties broken by smallest id, so matrices are reproducible.

struct SeparatorSplit {
    int s = -1;
    std::vector<char> side;  // per vertex, 0 or 1; entry for s itself is 0 but unused
    int count[2] = {0, 0};   // terminals per side
};

namespace detail {

// Largest-first greedy onto the lighter side; with every component holding
// at most half the terminals this lands within the 2k/3 bound.
inline int pack_components(const std::vector<std::pair<int, int>>& comps /* (count, key) */,
                           std::vector<char>* assignment = nullptr) {
    auto sorted = comps;
    std::stable_sort(sorted.begin(), sorted.end(),
                     [](const auto& a, const auto& b) { return a.first > b.first; });
    int cnt[2] = {0, 0};
    std::vector<char> assign(comps.size(), 0);
    for (const auto& [c, key] : sorted) {
        int sidep = cnt[1] < cnt[0] ? 1 : 0;
        cnt[sidep] += c;
        assign[key] = static_cast<char>(sidep);
    }
    if (assignment) *assignment = assign;
    return std::max(cnt[0], cnt[1]);
}

}  // namespace detail

inline SeparatorSplit tree_separator(const WeightedTree& T, const std::vector<int>& K) {
    const int n = T.n();
    const int k = static_cast<int>(K.size());
    if (k < 2) throw bad_parameter("separator needs at least two terminals");
    std::vector<char> is_term(n, 0);
    for (int t : K) {
        if (T.degree(t) > 1) throw bad_parameter("separator expects leaf terminals");
        is_term[t] = 1;
    }

    // Root anywhere; subtree terminal counts give the component counts of
    // T - s in O(1) per neighbor.
    std::vector<int> parent(n, -1), order;
    order.reserve(n);
    {
        std::vector<int> stack{0};
        std::vector<char> seen(n, 0);
        seen[0] = 1;
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            order.push_back(u);
            for (const auto& [v, w] : T.neighbors(u))
                if (!seen[v]) {
                    seen[v] = 1;
                    parent[v] = u;
                    stack.push_back(v);
                }
        }
    }
    std::vector<int> tcnt(n, 0);
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        int u = *it;
        tcnt[u] += is_term[u];
        if (parent[u] >= 0) tcnt[parent[u]] += tcnt[u];
    }

    int best_s = -1, best_val = k + 1;
    for (int s = 0; s < n; ++s) {
        if (is_term[s]) continue;
        std::vector<std::pair<int, int>> comps;
        int key = 0;
        for (const auto& [v, w] : T.neighbors(s)) {
            int c = (v == parent[s]) ? k - tcnt[s] : tcnt[v];
            comps.emplace_back(c, key++);
        }
        if (comps.empty()) continue;
        int val = detail::pack_components(comps);
        if (val < best_val) {
            best_val = val;
            best_s = s;
        }
    }
    if (best_s < 0 || best_val > (2 * k + 2) / 3)
        throw no_separator("no balanced separator found (k=" + std::to_string(k) + ")");

    SeparatorSplit split;
    split.s = best_s;
    split.side.assign(n, 0);
    std::vector<std::pair<int, int>> comps;
    int key = 0;
    for (const auto& [v, w] : T.neighbors(best_s)) {
        int c = (v == parent[best_s]) ? k - tcnt[best_s] : tcnt[v];
        comps.emplace_back(c, key++);
    }
    std::vector<char> assign;
    detail::pack_components(comps, &assign);
    // Flood each neighbor component with its side.
    key = 0;
    for (const auto& [v0, w0] : T.neighbors(best_s)) {
        char sd = assign[key];
        split.count[static_cast<int>(sd)] += comps[key].first;
        ++key;
        std::vector<int> stack{v0};
        split.side[v0] = sd;
        std::vector<char> seen(n, 0);
        seen[v0] = 1;
        seen[best_s] = 1;
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            for (const auto& [v, w] : T.neighbors(u))
                if (!seen[v]) {
                    seen[v] = 1;
                    split.side[v] = sd;
                    stack.push_back(v);
                }
        }
    }
    return split;
}

// ---------------------------------------------------------------------------
// The two-terminal fold. Splits the t1-t2 path at its exact midpoint c
// (inserted by rational halving when absent, kept and marked auxiliary),
// emits the signed coordinate f(v) = +-d(v, c), and quotients the path by
// distance-to-c, re-attaching hanging subtrees at the image of their
// attachment point. t1 and t2 land on the same folded vertex.

struct FoldTwoResult {
    std::vector<Rat> coord;  // over the working tree; input ids preserved
    WeightedTree folded;
    std::vector<int> g;      // working-tree vertex -> folded vertex
    int merged = -1;         // folded vertex carrying t1 and t2
    int center = -1;         // folded vertex at the fold point
};

inline FoldTwoResult fold_two_terminals(const WeightedTree& T, int t1, int t2) {
    if (t1 == t2) throw same_vertex("fold needs two distinct vertices");
    std::vector<int> pathv = T.path(t1, t2);
    const int plen = static_cast<int>(pathv.size());
    std::vector<Rat> D(plen, Rat(0));
    for (int i = 1; i < plen; ++i) {
        Rat w(-1);
        for (const auto& [v, wt] : T.neighbors(pathv[i - 1]))
            if (v == pathv[i]) {
                w = wt;
                break;
            }
        D[i] = D[i - 1] + w;
    }
    Rat mid = D[plen - 1] / 2;

    // Working tree: T plus the midpoint when it falls inside an edge.
    WeightedTree W = T;
    int cvert = -1;
    int cpos = -1;
    for (int i = 0; i < plen; ++i)
        if (D[i] == mid) {
            cvert = pathv[i];
            cpos = i;
            break;
        }
    if (cvert < 0) {
        int e = 0;
        while (!(D[e] < mid && mid < D[e + 1])) ++e;
        int a = pathv[e], b = pathv[e + 1];
        // Rebuild with the split edge; W keeps T's ids and appends c.
        auto edges = T.edge_list();
        WeightedTree W2;
        for (int v = 0; v < T.n(); ++v) W2.add_vertex(T.is_aux(v));
        int c = W2.add_vertex(/*aux=*/true);
        for (const auto& [u, v, w] : edges) {
            if ((u == a && v == b) || (u == b && v == a)) continue;
            W2.add_edge(u, v, w);
        }
        W2.add_edge(a, c, mid - D[e]);
        W2.add_edge(c, b, D[e + 1] - mid);
        W = std::move(W2);
        cvert = c;
        cpos = e + 1;
        pathv.insert(pathv.begin() + cpos, cvert);
        D.insert(D.begin() + cpos, mid);
    }
    const int wn = W.n();
    const int wplen = static_cast<int>(pathv.size());

    // Side of every vertex: path vertices by their prefix distance against
    // mid (ties, including c, go positive); hanging subtrees inherit their
    // attachment point's side.
    std::vector<int> pos(wn, -1);
    for (int i = 0; i < wplen; ++i) pos[pathv[i]] = i;
    std::vector<char> side(wn, 0);
    for (int i = 0; i < wplen; ++i) side[pathv[i]] = D[i] > mid ? 1 : 0;
    {
        std::vector<char> seen(wn, 0);
        for (int i = 0; i < wplen; ++i) seen[pathv[i]] = 1;
        for (int i = 0; i < wplen; ++i) {
            std::vector<int> stack;
            for (const auto& [v, w] : W.neighbors(pathv[i]))
                if (!seen[v]) {
                    seen[v] = 1;
                    side[v] = side[pathv[i]];
                    stack.push_back(v);
                }
            while (!stack.empty()) {
                int u = stack.back();
                stack.pop_back();
                for (const auto& [v, w] : W.neighbors(u))
                    if (!seen[v]) {
                        seen[v] = 1;
                        side[v] = side[u];
                        stack.push_back(v);
                    }
            }
        }
    }

    FoldTwoResult res;
    std::vector<Rat> dc = W.dists_from(cvert);
    res.coord.resize(wn);
    for (int v = 0; v < wn; ++v) res.coord[v] = side[v] ? -dc[v] : dc[v];

    // Quotient: one folded path node per distinct |D - mid| value.
    std::vector<Rat> rvals;
    rvals.reserve(wplen);
    for (int i = 0; i < wplen; ++i) {
        Rat r = abs_val(D[i] - mid);
        rvals.push_back(r);
    }
    std::vector<Rat> levels = rvals;
    std::sort(levels.begin(), levels.end());
    levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
    auto level_of = [&](const Rat& r) {
        return static_cast<int>(std::lower_bound(levels.begin(), levels.end(), r) - levels.begin());
    };

    const int nlevels = static_cast<int>(levels.size());
    WeightedTree F;
    std::vector<char> level_aux(nlevels, 1);
    for (int i = 0; i < wplen; ++i)
        if (!W.is_aux(pathv[i])) level_aux[level_of(rvals[i])] = 0;
    for (int l = 0; l < nlevels; ++l) F.add_vertex(level_aux[l] != 0);
    res.g.assign(wn, -1);
    for (int i = 0; i < wplen; ++i) res.g[pathv[i]] = level_of(rvals[i]);
    for (int v = 0; v < wn; ++v)
        if (pos[v] < 0) res.g[v] = F.add_vertex(W.is_aux(v));
    for (int l = 0; l + 1 < nlevels; ++l) F.add_edge(l, l + 1, levels[l + 1] - levels[l]);
    for (const auto& [u, v, w] : W.edge_list()) {
        bool upath = pos[u] >= 0, vpath = pos[v] >= 0;
        if (upath && vpath) continue;  // a tree edge between path vertices is a path edge
        F.add_edge(res.g[u], res.g[v], w);
    }
    res.folded = std::move(F);
    res.center = 0;
    res.merged = nlevels - 1;
    return res;
}

// ---------------------------------------------------------------------------
// Terminal embedding: an l_inf embedding F plus a 1-Lipschitz fold g into
// another tree such that for every pair, the max of the embedded distance
// and the folded tree distance equals the true distance exactly, and g
// collapses all terminals onto one vertex. Width <= ceil(a log2 k).

struct TerminalEmbedding {
    EmbeddingMatrix<Rat> F;  // rows = input tree vertices
    WeightedTree folded;
    std::vector<int> g;      // input vertex -> folded vertex
    int collapsed = -1;      // folded vertex holding all of g(K)
    int terminal_count = 0;
    std::vector<ColumnInfo> columns;
};

namespace detail {

// Splits T at s into the two side trees (s in both); local0/local1 map
// original ids into each part, -1 when absent.
struct TreeSplitParts {
    WeightedTree part[2];
    std::vector<int> local[2];
    int s_local[2] = {-1, -1};
};

inline TreeSplitParts split_at(const WeightedTree& T, int s, const std::vector<char>& side) {
    TreeSplitParts out;
    out.local[0].assign(T.n(), -1);
    out.local[1].assign(T.n(), -1);
    for (int p = 0; p < 2; ++p) out.s_local[p] = out.part[p].add_vertex(T.is_aux(s));
    out.local[0][s] = out.s_local[0];
    out.local[1][s] = out.s_local[1];
    for (int v = 0; v < T.n(); ++v) {
        if (v == s) continue;
        int p = side[v];
        out.local[p][v] = out.part[p].add_vertex(T.is_aux(v));
    }
    for (const auto& [u, v, w] : T.edge_list()) {
        int p = (u == s) ? side[v] : (v == s) ? side[u] : side[u];
        if (u != s && v != s && side[u] != side[v])
            throw Error("InternalInvariant", "split sides are not whole components");
        out.part[p].add_edge(out.local[p][u], out.local[p][v], w);
    }
    return out;
}

// Appends B to A, identifying b_glue with a_glue; returns B id -> A id.
inline std::vector<int> glue_trees(WeightedTree& A, const WeightedTree& B, int a_glue, int b_glue) {
    std::vector<int> map(B.n(), -1);
    map[b_glue] = a_glue;
    for (int v = 0; v < B.n(); ++v)
        if (v != b_glue) map[v] = A.add_vertex(B.is_aux(v));
    for (const auto& [u, v, w] : B.edge_list()) A.add_edge(map[u], map[v], w);
    return map;
}

inline TerminalEmbedding terminal_embed_rec(const WeightedTree& T, const std::vector<int>& K,
                                            const std::string& tag) {
    TerminalEmbedding out;
    out.terminal_count = static_cast<int>(K.size());
    const int n = T.n();
    if (K.size() <= 1) {
        out.F = EmbeddingMatrix<Rat>(n, 0);
        out.folded = T;
        out.g.resize(n);
        for (int v = 0; v < n; ++v) out.g[v] = v;
        out.collapsed = K.empty() ? -1 : K[0];
        return out;
    }
    if (K.size() == 2) {
        FoldTwoResult f = fold_two_terminals(T, K[0], K[1]);
        out.F = EmbeddingMatrix<Rat>(n, 1);
        for (int v = 0; v < n; ++v) out.F.at(v, 0) = f.coord[v];
        out.folded = std::move(f.folded);
        out.g.assign(f.g.begin(), f.g.begin() + n);
        out.collapsed = f.merged;
        out.columns.push_back({0, tag + "fold"});
        return out;
    }

    SeparatorSplit sep = tree_separator(T, K);
    TreeSplitParts parts = split_at(T, sep.s, sep.side);
    std::vector<int> Ks[2];
    for (int t : K) {
        int sd = sep.side[t];
        Ks[sd].push_back(parts.local[sd][t]);
    }
    TerminalEmbedding rec[2];
    for (int p = 0; p < 2; ++p) rec[p] = terminal_embed_rec(parts.part[p], Ks[p], tag + (p ? "R" : "L"));

    // Pad to a common width, translate both sides to zero at s.
    int width = std::max(rec[0].F.d, rec[1].F.d);
    for (int p = 0; p < 2; ++p) {
        if (rec[p].F.d < width) {
            EmbeddingMatrix<Rat> padded(rec[p].F.n, width);
            for (int r = 0; r < rec[p].F.n; ++r)
                for (int c = 0; c < rec[p].F.d; ++c) padded.at(r, c) = rec[p].F.at(r, c);
            rec[p].F = std::move(padded);
        }
        rec[p].F.translate_to_zero(parts.s_local[p]);
    }
    std::vector<ColumnInfo> cols;
    for (int c = 0; c < width; ++c) {
        if (c < static_cast<int>(rec[0].columns.size()))
            cols.push_back(rec[0].columns[c]);
        else if (c < static_cast<int>(rec[1].columns.size()))
            cols.push_back(rec[1].columns[c]);
        else
            cols.push_back({0, tag + "pad"});
    }

    // Combined embedding + the separator coordinate.
    EmbeddingMatrix<Rat> F(n, width + 1);
    std::vector<Rat> ds = T.dists_from(sep.s);
    for (int v = 0; v < n; ++v) {
        int p = (v == sep.s) ? 0 : sep.side[v];
        int lv = parts.local[p][v];
        for (int c = 0; c < width; ++c) F.at(v, c) = rec[p].F.at(lv, c);
        F.at(v, width) = (p == 0) ? ds[v] : -ds[v];
    }
    cols.push_back({0, tag + "sep"});

    // Glue the folded trees at the two copies of s, then collapse the two
    // residual terminals with one more fold.
    WeightedTree glued = rec[0].folded;
    std::vector<int> bmap = glue_trees(glued, rec[1].folded, rec[0].g[parts.s_local[0]],
                                       rec[1].g[parts.s_local[1]]);
    std::vector<int> gt(n, -1);
    for (int v = 0; v < n; ++v) {
        int p = (v == sep.s) ? 0 : sep.side[v];
        int img = rec[p].g[parts.local[p][v]];
        gt[v] = (p == 0) ? img : bmap[img];
    }
    int u0 = rec[0].collapsed;
    int u1 = bmap[rec[1].collapsed];

    if (u0 == u1) {
        out.F = std::move(F);
        out.folded = std::move(glued);
        out.g = std::move(gt);
        out.collapsed = u0;
        out.columns = std::move(cols);
        return out;
    }
    FoldTwoResult fin = fold_two_terminals(glued, u0, u1);
    EmbeddingMatrix<Rat> full(n, F.d + 1);
    for (int v = 0; v < n; ++v) {
        for (int c = 0; c < F.d; ++c) full.at(v, c) = F.at(v, c);
        full.at(v, F.d) = fin.coord[gt[v]];
    }
    cols.push_back({0, tag + "fold"});
    out.F = std::move(full);
    out.folded = std::move(fin.folded);
    out.g.resize(n);
    for (int v = 0; v < n; ++v) out.g[v] = fin.g[gt[v]];
    out.collapsed = fin.merged;
    out.columns = std::move(cols);
    return out;
}

}  // namespace detail

inline TerminalEmbedding terminal_embed(const WeightedTree& T, std::vector<int> K) {
    if (K.empty()) throw empty_terminals("terminal embedding needs at least one terminal");
    std::sort(K.begin(), K.end());
    K.erase(std::unique(K.begin(), K.end()), K.end());
    for (int t : K)
        if (t < 0 || t >= T.n()) throw bad_parameter("terminal out of range");

    const int n = T.n();
    TerminalEmbedding out;
    if (K.size() <= 2) {
        out = detail::terminal_embed_rec(T, K, "");
    } else {
        LeafifyResult leaf = leafify_terminals(T, K);
        TerminalEmbedding inner = detail::terminal_embed_rec(leaf.tree, leaf.terminals, "");
        out.F = EmbeddingMatrix<Rat>(n, inner.F.d);
        out.g.resize(n);
        for (int v = 0; v < n; ++v) {
            for (int c = 0; c < inner.F.d; ++c) out.F.at(v, c) = inner.F.at(v, c);
            out.g[v] = inner.g[v];
        }
        // Internal terminals adopt their dummy leaf's image (distance 0 away),
        // making |g(K)| = 1 hold by vertex identity, not just by distance.
        for (size_t i = 0; i < K.size(); ++i) out.g[K[i]] = inner.g[leaf.terminals[i]];
        out.folded = std::move(inner.folded);
        out.collapsed = inner.collapsed;
        out.columns = std::move(inner.columns);
        out.terminal_count = static_cast<int>(K.size());
    }
    out.terminal_count = static_cast<int>(K.size());
    if (out.F.d > terminal_width_bound(out.terminal_count))
        throw Error("InternalInvariant", "width bound exceeded: " + std::to_string(out.F.d) +
                                             " columns for k=" + std::to_string(out.terminal_count));
    return out;
}

// ---------------------------------------------------------------------------
// Prioritized isometric embedding (terminal embeddings composed over the layer
// sets S_i = first min(n, 2^(2^i)) points). The result is exactly isometric,
// and the row of rank j is supported on blocks 1..layer(j), O(log j) columns.

struct PrioritizedTreeEmbedding {
    EmbeddingMatrix<Rat> F;  // rows = original vertices
    std::vector<ColumnInfo> columns;
    std::vector<int> block_widths;
};

inline PrioritizedTreeEmbedding prioritized_tree_embedding(const WeightedTree& T,
                                                           const PriorityOrdering& pi) {
    const int n = T.n();
    if (pi.n() != n) throw size_mismatch("ordering size != tree vertices");
    PrioritizedTreeEmbedding out;
    out.F = EmbeddingMatrix<Rat>(n, 0);
    if (n <= 1) return out;

    WeightedTree cur = T;
    std::vector<int> curmap(n);
    for (int v = 0; v < n; ++v) curmap[v] = v;
    int prev_collapsed = -1;  // vertex of `cur` where the previous layer collapsed

    for (int level = 1;; ++level) {
        std::uint64_t cap = (1ull << level) >= 63 ? ~0ull : (1ull << (1ull << level));
        int si = static_cast<int>(std::min<std::uint64_t>(cap, static_cast<std::uint64_t>(n)));
        std::vector<int> K;
        K.reserve(si);
        for (int r = 0; r < si; ++r) K.push_back(curmap[pi.order[r]]);
        std::sort(K.begin(), K.end());
        K.erase(std::unique(K.begin(), K.end()), K.end());

        TerminalEmbedding te = terminal_embed(cur, K);
        if (prev_collapsed >= 0) te.F.translate_to_zero(prev_collapsed);

        EmbeddingMatrix<Rat> block(n, te.F.d);
        for (int v = 0; v < n; ++v)
            for (int c = 0; c < te.F.d; ++c) block.at(v, c) = te.F.at(curmap[v], c);
        out.F.append_columns(block);
        for (auto ci : te.columns) {
            ci.block = level;
            out.columns.push_back(std::move(ci));
        }
        out.block_widths.push_back(te.F.d);

        for (int v = 0; v < n; ++v) curmap[v] = te.g[curmap[v]];
        prev_collapsed = te.collapsed;
        cur = std::move(te.folded);

        if (si == n) break;  // this layer held every point; all rows collapsed
    }
    for (int v = 1; v < n; ++v)
        if (curmap[v] != curmap[0])
            throw Error("InternalInvariant", "final layer failed to collapse all points");
    return out;
}

// ---------------------------------------------------------------------------
// Classic separator embedding (isometric, O(log n) width): one signed
// distance-to-separator coordinate, recurse on the two sides, translate so
// both copies of s coincide.

namespace detail {

inline EmbeddingMatrix<Rat> llr_rec(const WeightedTree& T) {
    const int n = T.n();
    if (n <= 1) return EmbeddingMatrix<Rat>(n, 0);
    if (n == 2) {
        EmbeddingMatrix<Rat> F(2, 1);
        F.at(1, 0) = -T.neighbors(0)[0].second;
        return F;
    }

    // Vertex centroid: all components of T - s hold at most n/2 vertices.
    std::vector<int> parent(n, -1), order;
    order.reserve(n);
    {
        std::vector<int> stack{0};
        std::vector<char> seen(n, 0);
        seen[0] = 1;
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            order.push_back(u);
            for (const auto& [v, w] : T.neighbors(u))
                if (!seen[v]) {
                    seen[v] = 1;
                    parent[v] = u;
                    stack.push_back(v);
                }
        }
    }
    std::vector<int> cnt(n, 1);
    for (auto it = order.rbegin(); it != order.rend(); ++it)
        if (parent[*it] >= 0) cnt[parent[*it]] += cnt[*it];
    int best_s = -1, best_val = n + 1;
    for (int s = 0; s < n; ++s) {
        int worst = 0;
        for (const auto& [v, w] : T.neighbors(s))
            worst = std::max(worst, (v == parent[s]) ? n - cnt[s] : cnt[v]);
        if (worst < best_val) {
            best_val = worst;
            best_s = s;
        }
    }

    std::vector<std::pair<int, int>> comps;
    int key = 0;
    for (const auto& [v, w] : T.neighbors(best_s)) {
        comps.emplace_back((v == parent[best_s]) ? n - cnt[best_s] : cnt[v], key++);
    }
    std::vector<char> assign;
    pack_components(comps, &assign);
    std::vector<char> side(n, 0);
    key = 0;
    for (const auto& [v0, w0] : T.neighbors(best_s)) {
        char sd = assign[key++];
        std::vector<int> stack{v0};
        std::vector<char> seen(n, 0);
        seen[v0] = 1;
        seen[best_s] = 1;
        side[v0] = sd;
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            for (const auto& [v, w] : T.neighbors(u))
                if (!seen[v]) {
                    seen[v] = 1;
                    side[v] = sd;
                    stack.push_back(v);
                }
        }
    }

    TreeSplitParts parts = split_at(T, best_s, side);
    EmbeddingMatrix<Rat> sub[2];
    for (int p = 0; p < 2; ++p) {
        sub[p] = llr_rec(parts.part[p]);
        sub[p].translate_to_zero(parts.s_local[p]);
    }
    int width = std::max(sub[0].d, sub[1].d);
    EmbeddingMatrix<Rat> F(n, width + 1);
    std::vector<Rat> ds = T.dists_from(best_s);
    for (int v = 0; v < n; ++v) {
        int p = (v == best_s) ? 0 : side[v];
        int lv = parts.local[p][v];
        for (int c = 0; c < sub[p].d; ++c) F.at(v, c) = sub[p].at(lv, c);
        F.at(v, width) = (p == 0) ? ds[v] : -ds[v];
    }
    return F;
}

}  // namespace detail

inline EmbeddingMatrix<Rat> llr_tree_embedding(const WeightedTree& T) {
    return detail::llr_rec(T);
}

}  // namespace metrembed
