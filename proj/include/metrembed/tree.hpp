#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "metrembed/metric.hpp"

namespace metrembed {

// Weighted tree with exact nonnegative rational edge weights. Weight zero is
// allowed (used by terminal leafification) and flags the metric as pseudo.
// Vertices are dense ids 0..n-1; `aux` marks vertices introduced by the
// library (subdivision midpoints, dummy leaves) rather than by the caller.
class WeightedTree {
public:
    WeightedTree() = default;

    static WeightedTree from_edges(int n, const std::vector<std::tuple<int, int, Rat>>& edges) {
        WeightedTree t;
        t.adj_.resize(n);
        t.aux_.assign(n, 0);
        for (const auto& [u, v, w] : edges) t.add_edge(u, v, w);
        if (n > 0 && static_cast<int>(edges.size()) != n - 1)
            throw bad_parameter("tree needs exactly n-1 edges");
        t.check_connected();
        return t;
    }

    int n() const { return static_cast<int>(adj_.size()); }

    int add_vertex(bool aux = false) {
        adj_.emplace_back();
        aux_.push_back(aux ? 1 : 0);
        return n() - 1;
    }

    void add_edge(int u, int v, const Rat& w) {
        if (u < 0 || u >= n() || v < 0 || v >= n() || u == v) throw bad_parameter("bad tree edge");
        if (w < 0) throw negative_weight("tree edge weight below zero");
        adj_[u].emplace_back(v, w);
        adj_[v].emplace_back(u, w);
        if (w == 0) has_zero_edge_ = true;
    }

    const std::vector<std::pair<int, Rat>>& neighbors(int v) const { return adj_[v]; }
    bool is_aux(int v) const { return aux_[v] != 0; }
    bool has_zero_edge() const { return has_zero_edge_; }
    int degree(int v) const { return static_cast<int>(adj_[v].size()); }

    // Single-source distances, O(n), exact.
    std::vector<Rat> dists_from(int src) const {
        std::vector<Rat> d(n(), Rat(0));
        std::vector<char> seen(n(), 0);
        std::vector<int> stack{src};
        seen[src] = 1;
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            for (const auto& [v, w] : adj_[u])
                if (!seen[v]) {
                    seen[v] = 1;
                    d[v] = d[u] + w;
                    stack.push_back(v);
                }
        }
        return d;
    }

    Rat distance(int a, int b) const { return dists_from(a)[b]; }

    // Vertices along the unique a->b path, inclusive.
    std::vector<int> path(int a, int b) const {
        std::vector<int> parent(n(), -1);
        std::vector<char> seen(n(), 0);
        std::vector<int> stack{a};
        seen[a] = 1;
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            if (u == b) break;
            for (const auto& [v, w] : adj_[u])
                if (!seen[v]) {
                    seen[v] = 1;
                    parent[v] = u;
                    stack.push_back(v);
                }
        }
        std::vector<int> p;
        for (int v = b; v != -1; v = parent[v]) p.push_back(v);
        std::reverse(p.begin(), p.end());
        if (p.empty() || p.front() != a) throw bad_parameter("path endpoints not connected");
        return p;
    }

    void check_connected() const {
        if (n() == 0) return;
        std::vector<char> seen(n(), 0);
        std::vector<int> stack{0};
        seen[0] = 1;
        int cnt = 1;
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            for (const auto& [v, w] : adj_[u])
                if (!seen[v]) {
                    seen[v] = 1;
                    ++cnt;
                    stack.push_back(v);
                }
        }
        if (cnt != n()) throw disconnected_graph("tree is not connected");
    }

    std::vector<std::tuple<int, int, Rat>> edge_list() const {
        std::vector<std::tuple<int, int, Rat>> out;
        for (int u = 0; u < n(); ++u)
            for (const auto& [v, w] : adj_[u])
                if (u < v) out.emplace_back(u, v, w);
        return out;
    }

private:
    std::vector<std::vector<std::pair<int, Rat>>> adj_;
    std::vector<char> aux_;
    bool has_zero_edge_ = false;
};

// Exact path-length metric; pseudometric flag set when zero edges exist.
inline MetricSpace<Rat> metric_from_tree(const WeightedTree& T) {
    MetricSpace<Rat> M(T.n());
    parallel_for(T.n(), [&](std::int64_t i) {
        auto d = T.dists_from(static_cast<int>(i));
        for (int j = 0; j < T.n(); ++j) M.at(static_cast<int>(i), j) = d[j];
    });
    M.pseudometric = T.has_zero_edge();
    return M;
}

inline WeightedTree random_tree(int n, Rng& rng, int max_num = 12, int max_den = 4) {
    std::vector<std::tuple<int, int, Rat>> edges;
    for (int v = 1; v < n; ++v) {
        int u = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(v)));
        Rat w(static_cast<int>(rng.next_in(1, max_num)), static_cast<int>(rng.next_in(1, max_den)));
        w.canonicalize();
        edges.emplace_back(u, v, w);
    }
    return WeightedTree::from_edges(n, edges);
}

}  // namespace metrembed
