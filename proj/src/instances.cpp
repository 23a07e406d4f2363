#include "metrembed/instances.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "metrembed/embed_general.hpp"
#include "metrembed/graph.hpp"

namespace metrembed {

// --- cycle ------------------------------------------------------------------

CycleInstance cycle_instance(int n) {
    if (n < 2) throw bad_parameter("cycle instance needs n >= 2");
    const int N = 2 * n;
    CycleInstance inst;
    inst.half_n = n;
    std::vector<WeightedEdge<Rat>> edges;
    for (int v = 0; v < N; ++v) edges.push_back({v, (v + 1) % N, Rat(1)});
    inst.metric = metric_from_graph(N, edges);
    for (int i = 0; i < n; ++i) inst.antipodal_pairs.emplace_back(i, n + i);

    std::vector<int> order{n, n + 1};
    for (int v = 0; v < N; ++v)
        if (v != n && v != n + 1) order.push_back(v);
    inst.priority = PriorityOrdering::from_order(order);

    // Verify on the computed metric, not the construction.
    bool diam_ok = true;
    for (const auto& [a, b] : inst.antipodal_pairs) diam_ok &= inst.metric.at(a, b) == Rat(n);
    Rat diameter(0);
    for (int i = 0; i < N; ++i)
        for (int j = i + 1; j < N; ++j) diameter = std::max(diameter, inst.metric.at(i, j));
    inst.report.require("antipodal-pairs-realize-diameter", diam_ok && diameter == Rat(n));
    inst.report.require("metric-valid", validate_metric(inst.metric).ok());
    inst.report.add_stat("vertices", std::to_string(N));
    inst.report.add_stat("diameter", std::to_string(n));
    return inst;
}

EmbeddingMatrix<Rat> cycle_optimal_embedding(int n) {
    if (n < 2) throw bad_parameter("cycle embedding needs n >= 2");
    const int N = 2 * n;
    EmbeddingMatrix<Rat> F(N, n);
    auto cyc_dist = [&](int a, int b) {
        int m = std::abs(a - b);
        return std::min(m, N - m);
    };
    for (int j = 0; j < N; ++j)
        for (int i = 0; i < n; ++i) F.at(j, i) = Rat(cyc_dist(j, n + i));
    // Not trusted: verify isometry before handing the matrix out.
    CycleInstance inst = cycle_instance(n);
    AuditReport audit = audit_distortion(inst.metric, F);
    if (!(audit.expansion == 1.0 && audit.contraction == 1.0))
        throw Error("InternalInvariant", "cycle embedding is not isometric");
    return F;
}

// --- antipodal basis --------------------------------------------------------

AntipodalBasisInstance antipodal_basis(int n, double p) {
    if (n < 1) throw bad_parameter("antipodal basis needs n >= 1");
    if (!(p >= 1.0)) throw bad_parameter("l_p norm needs p >= 1");
    AntipodalBasisInstance inst;
    inst.n = n;
    inst.p = p;
    inst.points.n = 2 * n;
    inst.points.m = n;
    inst.points.p = p;
    inst.points.coords.assign(static_cast<size_t>(2 * n) * n, 0.0);
    for (int i = 0; i < n; ++i) {
        inst.points.at(2 * i, i) = 1.0;
        inst.points.at(2 * i + 1, i) = -1.0;
        inst.antipodal_pairs.emplace_back(2 * i, 2 * i + 1);
    }
    inst.metric = metric_from_points(inst.points);
    inst.cross_distance = std::isinf(p) ? 1.0 : std::pow(2.0, 1.0 / p);

    bool anti_ok = true, cross_ok = true;
    for (const auto& [a, b] : inst.antipodal_pairs) anti_ok &= std::fabs(inst.metric.at(a, b) - 2.0) < 1e-12;
    for (int a = 0; a < 2 * n; ++a)
        for (int b = a + 1; b < 2 * n; ++b) {
            if ((a / 2) == (b / 2)) continue;
            cross_ok &= std::fabs(inst.metric.at(a, b) - inst.cross_distance) < 1e-12;
        }
    inst.report.require("antipodal-distance-2", anti_ok);
    inst.report.require("cross-distance-2^(1/p)", cross_ok);
    inst.report.add_stat("cross_distance", std::to_string(inst.cross_distance));
    return inst;
}

// --- hypercube code ---------------------------------------------------------

int hamming(std::uint32_t a, std::uint32_t b) { return std::popcount(a ^ b); }

HypercubeCodeInstance hypercube_code(int n, const Rat& eps) {
    if (n < 2) throw bad_parameter("hypercube code needs n >= 2");
    if (n > 24) throw bad_parameter("hypercube enumeration is capped at n = 24");
    if (!(eps > 0 && eps < Rat(1, 6))) throw bad_parameter("hypercube code needs eps in (0, 1/6)");
    HypercubeCodeInstance inst;
    inst.n = n;
    inst.eps = eps;
    inst.eps_prime = eps * 3;
    // radius = floor(eps' * n), computed exactly.
    Rat en = inst.eps_prime * n;
    mpz_class flo;
    mpz_fdiv_q(flo.get_mpz_t(), en.get_num().get_mpz_t(), en.get_den().get_mpz_t());
    inst.radius = static_cast<int>(flo.get_si());

    const std::uint32_t total = 1u << n;
    const std::uint32_t full = total - 1;
    std::vector<char> alive(total, 1);
    for (std::uint32_t x = 0; x < total; ++x) {
        if (!alive[x]) continue;
        // x is the lexicographically smallest remaining point; add {x, -x} and
        // delete both Hamming balls. Deleting y also deletes -y by symmetry.
        inst.code.push_back(x);
        inst.code.push_back(full ^ x);
        for (std::uint32_t y = 0; y < total; ++y) {
            if (!alive[y]) continue;
            int h = hamming(x, y);
            if (h <= inst.radius || h >= n - inst.radius) alive[y] = 0;
        }
    }

    bool symmetric = true, separated = true;
    std::vector<char> member(total, 0);
    for (auto c : inst.code) member[c] = 1;
    for (auto c : inst.code) symmetric &= member[full ^ c] != 0;
    int min_dist = n;
    for (size_t i = 0; i < inst.code.size(); ++i)
        for (size_t j = i + 1; j < inst.code.size(); ++j)
            min_dist = std::min(min_dist, hamming(inst.code[i], inst.code[j]));
    // separation must be strict: > eps' * n, i.e. min_dist * den > num.
    separated = inst.code.size() < 2 || Rat(min_dist) > en;

    // |A| >= 2^n / (2 C(n, radius))  <=>  |A| * 2 * C(n, radius) >= 2^n.
    unsigned long long binom = 1;
    for (int i = 1; i <= inst.radius; ++i) binom = binom * (n - i + 1) / i;
    bool size_ok = static_cast<unsigned long long>(inst.code.size()) * 2 * binom >= (1ull << n);

    inst.report.require("symmetric", symmetric);
    inst.report.require("separated", separated,
                        "min pairwise Hamming distance " + std::to_string(min_dist));
    inst.report.require("size-bound", size_ok,
                        "|A| = " + std::to_string(inst.code.size()) + ", C(n,r) = " + std::to_string(binom));
    inst.report.add_stat("code_size", std::to_string(inst.code.size()));
    inst.report.add_stat("radius", std::to_string(inst.radius));
    inst.report.add_stat("min_hamming", std::to_string(min_dist));
    inst.report.add_stat("antipodal_l2_distance", std::to_string(std::sqrt(4.0 * n)));
    return inst;
}

PointSet<double> hypercube_points(const HypercubeCodeInstance& inst) {
    PointSet<double> P;
    P.n = static_cast<int>(inst.code.size());
    P.m = inst.n;
    P.p = 2.0;
    P.coords.assign(static_cast<size_t>(P.n) * P.m, 0.0);
    for (int i = 0; i < P.n; ++i)
        for (int k = 0; k < inst.n; ++k)
            P.at(i, k) = ((inst.code[i] >> k) & 1u) ? 1.0 : -1.0;
    return P;
}

// --- padded prefix set ------------------------------------------------------

PaddedPrefixSet padded_prefix_set(int n, const Rat& eps_prime) {
    if (n < 1 || !(eps_prime > 0) || eps_prime > 1) throw bad_parameter("need n >= 1, eps' in (0, 1]");
    PaddedPrefixSet y;
    y.n = n;
    Rat en = eps_prime * n;
    mpz_class flo;
    mpz_fdiv_q(flo.get_mpz_t(), en.get_num().get_mpz_t(), en.get_den().get_mpz_t());
    y.prefix = static_cast<int>(flo.get_si());
    if (y.prefix > 22) throw bad_parameter("prefix set would hold 2^" + std::to_string(y.prefix) + " points");
    const int m = y.prefix;
    const int count = 1 << m;
    y.points.n = count;
    y.points.m = n;
    y.points.p = 2.0;
    y.points.coords.assign(static_cast<size_t>(count) * n, 0.0);
    for (int i = 0; i < count; ++i)
        for (int k = 0; k < m; ++k) y.points.at(i, k) = ((i >> k) & 1) ? 1.0 : -1.0;
    y.report.require("size-2^m", y.points.n == (1 << m));
    y.report.add_stat("prefix_coords", std::to_string(m));
    y.report.add_stat("rounded_down", Rat(m) == en ? "no" : "yes");
    // reported identity (exact when eps' n is integral): |Y|^(1/(2 eps')) = 2^(n/2)
    Rat expnt = Rat(m) / (eps_prime * 2);
    Rat half(n, 2);
    half.canonicalize();
    y.report.add_stat("y_power_exponent", rat_to_string(expnt));
    y.report.add_stat("half_n", rat_to_string(half));
    return y;
}

CodeWithPrefix combine_code_with_prefix(const HypercubeCodeInstance& code,
                                        const PaddedPrefixSet& prefix) {
    if (code.n != prefix.n) throw size_mismatch("code and prefix set live in different cubes");
    CodeWithPrefix out;
    PointSet<double> cp = hypercube_points(code);
    out.y_size = prefix.points.n;
    out.points.n = prefix.points.n + cp.n;
    out.points.m = code.n;
    out.points.p = 2.0;
    out.points.coords = prefix.points.coords;
    out.points.coords.insert(out.points.coords.end(), cp.coords.begin(), cp.coords.end());
    out.priority = PriorityOrdering::identity(out.points.n);  // Y rows come first
    return out;
}

// --- random bipartite hard instance -----------------------------------------

BipartiteInstance random_bipartite_hard(int n, std::uint64_t seed, int max_retries) {
    if (n < 4) throw bad_parameter("bipartite instance needs n >= 4");
    if (n > 62) throw bad_parameter("bipartite generator is capped at n = 62 (bitmask rows)");
    BipartiteInstance inst;
    inst.n = n;
    inst.seed = seed;
    inst.l = 2 * n;
    inst.r = 2 * n + 1;
    std::vector<std::uint64_t> radj(n, 0);

    int attempt = 0;
    for (;; ++attempt) {
        if (attempt >= max_retries)
            throw retries_exhausted("no graph with properties (1),(2) in " +
                                    std::to_string(max_retries) + " attempts");
        Rng rng = Rng::substream(seed, static_cast<std::uint64_t>(attempt));
        inst.adj.assign(n, 0);
        std::fill(radj.begin(), radj.end(), 0);
        for (int u = 0; u < n; ++u)
            for (int v = 0; v < n; ++v)
                if (rng.next_bool()) {
                    inst.adj[u] |= 1ull << v;
                    radj[v] |= 1ull << u;
                }
        bool ok = true;
        for (int u = 0; u < n && ok; ++u) ok = inst.adj[u] != 0 && radj[u] != 0;
        for (int u = 0; u < n && ok; ++u)
            for (int v = u + 1; v < n && ok; ++v)
                ok = (inst.adj[u] & inst.adj[v]) != 0 && (radj[u] & radj[v]) != 0;
        if (ok) break;
    }
    inst.attempts_used = attempt + 1;

    std::vector<WeightedEdge<Rat>> edges;
    for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v)
            if ((inst.adj[u] >> v) & 1ull) edges.push_back({u, n + v, Rat(1)});
    for (int v = 0; v < n; ++v) edges.push_back({inst.l, n + v, Rat(1)});  // l -- R
    for (int u = 0; u < n; ++u) edges.push_back({inst.r, u, Rat(1)});      // r -- L
    inst.metric = metric_from_graph(2 * n + 2, edges);

    const int N = 2 * n + 2;
    for (int a = 0; a < N; ++a)
        for (int b = a + 1; b < N; ++b) {
            Rat d = inst.metric.at(a, b);
            if (d == 1)
                inst.A1.emplace_back(a, b);
            else if (d == 2)
                inst.A2.emplace_back(a, b);
            else if (d == 3)
                inst.A3.emplace_back(a, b);
        }

    std::vector<int> order{inst.l, inst.r};
    for (int v = 0; v < 2 * n; ++v) order.push_back(v);
    inst.priority = PriorityOrdering::from_order(order);

    inst.union_bound = 2.0 * (static_cast<double>(n) * (n - 1) / 2) * std::pow(0.75, n) +
                       2.0 * n * std::pow(0.5, n);

    // Verify the advertised structure on the computed metric.
    bool same_side_2 = true;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) {
            same_side_2 &= inst.metric.at(u, v) == Rat(2);
            same_side_2 &= inst.metric.at(n + u, n + v) == Rat(2);
        }
    bool cross_13 = true;
    for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v) {
            Rat d = inst.metric.at(u, n + v);
            cross_13 &= d == Rat(1) || d == Rat(3);
        }
    bool near_apex = true;
    for (int v = 0; v < 2 * n; ++v)
        near_apex &= inst.metric.at(v, inst.l) == Rat(1) || inst.metric.at(v, inst.r) == Rat(1);
    bool all_pairs_split =
        static_cast<int>(inst.A1.size() + inst.A2.size() + inst.A3.size()) == N * (N - 1) / 2;
    inst.report.require("property-1-same-side-distance-2", same_side_2);
    inst.report.require("property-2-no-isolated", true, "enforced during sampling");
    inst.report.require("cross-distances-in-{1,3}", cross_13);
    inst.report.require("every-vertex-next-to-l-or-r", near_apex);
    inst.report.require("pairs-partition-into-A1-A2-A3", all_pairs_split);
    inst.report.add_stat("attempts", std::to_string(inst.attempts_used));
    inst.report.add_stat("union_bound", std::to_string(inst.union_bound));
    inst.report.add_stat("a3_pairs", std::to_string(inst.A3.size()));
    return inst;
}

EmbeddingMatrix<Rat> bipartite_A12_embedding(const BipartiteInstance& inst) {
    const int n = inst.n;
    const int N = 2 * n + 2;
    // Block (a): all N points as a unit clique (satisfies A1, expands nothing).
    EmbeddingMatrix<Rat> F = uniform_clique_embedding(N, Rat(1));
    // Blocks (b): +-1 codes on L' = L u {l} with R' at zero, and vice versa.
    int side_bits = 0;
    while ((1 << side_bits) < n + 1) ++side_bits;
    EmbeddingMatrix<Rat> codes(N, 2 * side_bits);
    auto emit = [&](const std::vector<int>& verts, int col0) {
        for (size_t idx = 0; idx < verts.size(); ++idx)
            for (int b = 0; b < side_bits; ++b)
                codes.at(verts[idx], col0 + b) = ((idx >> b) & 1) ? Rat(1) : Rat(-1);
    };
    std::vector<int> left, right;
    for (int u = 0; u < n; ++u) left.push_back(u);
    left.push_back(inst.l);
    for (int v = 0; v < n; ++v) right.push_back(n + v);
    right.push_back(inst.r);
    emit(left, 0);
    emit(right, side_bits);
    F.append_columns(codes);
    return F;
}

}  // namespace metrembed
