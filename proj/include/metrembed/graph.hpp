#pragma once

#include <queue>
#include <vector>

#include "metrembed/metric.hpp"

namespace metrembed {

template <class T>
struct WeightedEdge {
    int u = 0, v = 0;
    T w{};
};

// Shortest-path metric of a connected undirected graph. Parallel Dijkstra,
// one source per task. Exact when T is rational.
template <class T>
MetricSpace<T> metric_from_graph(int n, const std::vector<WeightedEdge<T>>& edges,
                                 bool allow_zero_weights = false) {
    if (n <= 0) throw bad_parameter("graph needs at least one vertex");
    std::vector<std::vector<std::pair<int, T>>> adj(n);
    for (const auto& e : edges) {
        if (e.u < 0 || e.u >= n || e.v < 0 || e.v >= n) throw bad_parameter("edge endpoint out of range");
        if (e.w < T(0)) throw negative_weight("graph edge weight below zero");
        if (e.w == T(0) && !allow_zero_weights) throw negative_weight("zero edge weight not allowed here");
        adj[e.u].emplace_back(e.v, e.w);
        adj[e.v].emplace_back(e.u, e.w);
    }
    MetricSpace<T> M(n);
    std::vector<char> disconnected(n, 0);
    parallel_for_dynamic(n, [&](std::int64_t ss) {
        int s = static_cast<int>(ss);
        std::vector<T> dist(n, T(0));
        std::vector<char> done(n, 0);
        using Item = std::pair<T, int>;
        std::priority_queue<Item, std::vector<Item>, std::greater<Item>> pq;
        std::vector<char> reached(n, 0);
        reached[s] = 1;
        pq.emplace(T(0), s);
        while (!pq.empty()) {
            auto [d, u] = pq.top();
            pq.pop();
            if (done[u]) continue;
            done[u] = 1;
            dist[u] = d;
            for (const auto& [v, w] : adj[u]) {
                if (done[v]) continue;
                T nd = d + w;
                if (!reached[v] || nd < M.at(s, v)) {
                    reached[v] = 1;
                    M.at(s, v) = nd;  // scratch for the frontier bound
                    pq.emplace(nd, v);
                }
            }
        }
        for (int v = 0; v < n; ++v) {
            if (!done[v]) disconnected[s] = 1;
            M.at(s, v) = dist[v];
        }
    });
    for (int s = 0; s < n; ++s)
        if (disconnected[s]) throw disconnected_graph("no path from vertex " + std::to_string(s));
    M.pseudometric = allow_zero_weights;
    return M;
}

namespace reference {

// Serial Floyd-Warshall, kept as the oracle the parallel Dijkstra is checked
// against (exact agreement in the rational kernel).
template <class T>
MetricSpace<T> apsp_floyd_warshall(int n, const std::vector<WeightedEdge<T>>& edges,
                                   bool allow_zero_weights = false) {
    if (n <= 0) throw bad_parameter("graph needs at least one vertex");
    std::vector<char> reach(static_cast<size_t>(n) * n, 0);
    MetricSpace<T> M(n);
    for (int i = 0; i < n; ++i) reach[static_cast<size_t>(i) * n + i] = 1;
    for (const auto& e : edges) {
        if (e.w < T(0)) throw negative_weight("graph edge weight below zero");
        if (e.w == T(0) && !allow_zero_weights) throw negative_weight("zero edge weight not allowed here");
        auto relax = [&](int a, int b) {
            char& r = reach[static_cast<size_t>(a) * n + b];
            if (!r || e.w < M.at(a, b)) {
                r = 1;
                M.at(a, b) = e.w;
            }
        };
        relax(e.u, e.v);
        relax(e.v, e.u);
    }
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i) {
            if (!reach[static_cast<size_t>(i) * n + k]) continue;
            for (int j = 0; j < n; ++j) {
                if (!reach[static_cast<size_t>(k) * n + j]) continue;
                T through = M.at(i, k) + M.at(k, j);
                char& r = reach[static_cast<size_t>(i) * n + j];
                if (!r || through < M.at(i, j)) {
                    r = 1;
                    M.at(i, j) = through;
                }
            }
        }
    for (size_t i = 0; i < reach.size(); ++i)
        if (!reach[i]) throw disconnected_graph("pair unreachable");
    M.pseudometric = allow_zero_weights;
    return M;
}

}  // namespace reference

}  // namespace metrembed
