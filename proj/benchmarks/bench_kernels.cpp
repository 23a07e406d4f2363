// Compares the OpenMP kernels against their serial reference implementations
// (the same references the test suite uses as oracles). Prints a CSV table:
// kernel,n,serial_ms,parallel_ms,speedup.

#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#include "metrembed/auditor.hpp"
#include "metrembed/embed_general.hpp"
#include "metrembed/graph.hpp"
#include "metrembed/jl.hpp"
#include "metrembed/parallel.hpp"

using namespace metrembed;

namespace {

double ms_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

template <class F>
double time_best_of(int reps, F&& body) {
    double best = 1e300;
    for (int r = 0; r < reps; ++r) {
        auto t0 = std::chrono::steady_clock::now();
        body();
        best = std::min(best, ms_since(t0));
    }
    return best;
}

void row(const std::string& kernel, int n, double serial_ms, double parallel_ms) {
    std::printf("%s,%d,%.2f,%.2f,%.2fx\n", kernel.c_str(), n, serial_ms, parallel_ms,
                serial_ms / parallel_ms);
}

std::vector<WeightedEdge<double>> random_edges(int n, Rng& rng) {
    std::vector<WeightedEdge<double>> edges;
    for (int v = 1; v < n; ++v)
        edges.push_back({static_cast<int>(rng.next_below(v)), v, 0.25 + rng.next_unit()});
    for (int e = 0; e < 2 * n; ++e) {
        int u = static_cast<int>(rng.next_below(n)), v = static_cast<int>(rng.next_below(n));
        if (u != v) edges.push_back({u, v, 0.25 + 2.0 * rng.next_unit()});
    }
    return edges;
}

}  // namespace

int main(int argc, char** argv) {
    int scale = argc > 1 ? std::atoi(argv[1]) : 1;
    std::printf("# threads=%d scale=%d\n", max_threads(), scale);
    std::printf("kernel,n,serial_ms,parallel_ms,speedup\n");

    {
        int n = 384 * scale;
        Rng rng(1);
        auto edges = random_edges(n, rng);
        double serial =
            time_best_of(3, [&] { (void)reference::apsp_floyd_warshall(n, edges); });
        double parallel = time_best_of(3, [&] { (void)metric_from_graph(n, edges); });
        row("apsp", n, serial, parallel);
    }

    {
        int n = 256 * scale;
        Rng rng(2);
        auto edges = random_edges(n, rng);
        auto M = metric_from_graph(n, edges);
        auto pi = PriorityOrdering::identity(n);
        BetaSchedule beta = preset_beta("doubly-exp");
        double serial = time_best_of(3, [&] { (void)reference::meta_embedding_naive(M, pi, beta); });
        double parallel = time_best_of(3, [&] { (void)meta_embedding(M, pi, beta); });
        row("meta-embedding", n, serial, parallel);

        auto F = meta_embedding(M, pi, beta);
        double aserial = time_best_of(3, [&] { (void)reference::audit_distortion_serial(M, F); });
        double aparallel = time_best_of(3, [&] { (void)audit_distortion(M, F); });
        row("audit-scan", n, aserial, aparallel);
    }

    {
        int n = 4000 * scale, m = 64, d = 256;
        Rng rng(3);
        PointSet<double> P;
        P.n = n;
        P.m = m;
        P.p = 2.0;
        P.coords.resize(static_cast<size_t>(n) * m);
        for (auto& c : P.coords) c = rng.next_gauss();
        auto map = JLLayerMap::generate(0, m, d, 7);
        std::vector<double> out(static_cast<size_t>(n) * d);
        double serial = time_best_of(3, [&] { out = reference::jl_apply_serial(map, P); });
        double parallel = time_best_of(3, [&] {
            parallel_for(n, [&](std::int64_t p) {
                map.apply(P.coords.data() + static_cast<size_t>(p) * m,
                          out.data() + static_cast<size_t>(p) * d);
            });
        });
        row("jl-apply", n, serial, parallel);
    }
    return 0;
}
