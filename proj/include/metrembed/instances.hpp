#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "metrembed/auditor.hpp"
#include "metrembed/embedding.hpp"
#include "metrembed/metric.hpp"
#include "metrembed/rng.hpp"

namespace metrembed {

// Every generator re-verifies its advertised properties on the built object
// (via metric/auditor scans, not the construction path) and ships the result.
struct InstanceReport {
    std::vector<AuditCheck> checks;
    std::vector<std::pair<std::string, std::string>> stats;

    bool pass() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }
    void require(const std::string& name, bool ok, const std::string& details = "") {
        checks.push_back({name, ok, details, {}});
    }
    void add_stat(const std::string& k, const std::string& v) { stats.emplace_back(k, v); }
};

// --- cycle C_{2n} (unweighted), the planar/treewidth-2 hard instance -------

struct CycleInstance {
    int half_n = 0;  // the cycle has 2 * half_n vertices and diameter half_n
    MetricSpace<Rat> metric;
    std::vector<std::pair<int, int>> antipodal_pairs;  // {v_i, v_{n+i}}
    PriorityOrdering priority;  // v_n, v_{n+1} take ranks 1 and 2
    InstanceReport report;
};

CycleInstance cycle_instance(int n);

// Isometric embedding of C_{2n} into exactly n coordinates; column i is the
// cycle distance to v_{n+i} (each column satisfies exactly one antipodal
// pair). Isometry is verified before returning.
EmbeddingMatrix<Rat> cycle_optimal_embedding(int n);

// --- antipodal basis {+-e_1, ..., +-e_n} in l_p ----------------------------

struct AntipodalBasisInstance {
    int n = 0;
    double p = 2.0;
    PointSet<double> points;  // 2n points; e_i at index 2i, -e_i at 2i+1
    MetricSpace<double> metric;
    std::vector<std::pair<int, int>> antipodal_pairs;
    double cross_distance = 0;  // 2^(1/p)
    InstanceReport report;
};

AntipodalBasisInstance antipodal_basis(int n, double p);

// --- greedy symmetric hypercube code (separation > eps' * n) ---------------

struct HypercubeCodeInstance {
    int n = 0;
    Rat eps;        // < 1/6
    Rat eps_prime;  // 3 * eps
    int radius = 0; // floor(eps' * n): greedy deletes Hamming balls of this radius
    std::vector<std::uint32_t> code;  // masks over {0,1}^n, bit set = coordinate +1
    InstanceReport report;
};

// Enumerates {+-1}^n, so n is capped at 24.
HypercubeCodeInstance hypercube_code(int n, const Rat& eps);

// +-1 rows of the code as points in l_2.
PointSet<double> hypercube_points(const HypercubeCodeInstance& inst);

int hamming(std::uint32_t a, std::uint32_t b);

// --- padded prefix set Y = {+-1}^m {0}^(n-m) --------------------------------

struct PaddedPrefixSet {
    int n = 0;
    int prefix = 0;  // m = floor(eps' * n), rounding recorded in the report
    PointSet<double> points;
    InstanceReport report;
};

PaddedPrefixSet padded_prefix_set(int n, const Rat& eps_prime);

// Code and prefix set combined, with the points of Y ranked first.
struct CodeWithPrefix {
    PointSet<double> points;  // Y rows first, then the code rows
    PriorityOrdering priority;
    int y_size = 0;
};

CodeWithPrefix combine_code_with_prefix(const HypercubeCodeInstance& code,
                                        const PaddedPrefixSet& prefix);

// --- random bipartite hard instance G' with apex vertices l and r ----------

struct BipartiteInstance {
    int n = 0;  // per side; vertices: L = 0..n-1, R = n..2n-1, l = 2n, r = 2n+1
    std::uint64_t seed = 0;
    int attempts_used = 0;
    int l = 0, r = 0;
    std::vector<std::uint64_t> adj;  // for u in L: bitmask over R offsets
    MetricSpace<Rat> metric;         // of G', distances in {1,2,3}
    std::vector<std::pair<int, int>> A1, A2, A3;  // pairs at distance 1, 2, 3
    PriorityOrdering priority;       // l, r take ranks 1 and 2
    double union_bound = 0;          // per-attempt failure probability bound, reported
    InstanceReport report;
};

BipartiteInstance random_bipartite_hard(int n, std::uint64_t seed, int max_retries = 100000);

// Satisfies all A1 u A2 pairs non-expansively in O(log n) coordinates:
// a unit clique block plus one +-1 code block per side.
EmbeddingMatrix<Rat> bipartite_A12_embedding(const BipartiteInstance& inst);

// The certifiable implication behind the lower bound: in any embedding of G'
// with expansion at most t < 3/2, a column where f(l) = f(r) satisfies no
// distance-3 pair. Reports the count of columns separating l from r against
// the count of satisfied A3 pairs.
template <class T>
AuditReport bipartite_certify(const BipartiteInstance& inst, const EmbeddingMatrix<T>& F, double t,
                              double tol = 1e-9) {
    if (t >= 1.5) throw bad_parameter("the certifier applies to distortion t < 3/2");
    if (F.n != inst.metric.n)
        throw not_gprime_embedding("row count " + std::to_string(F.n) + " != " +
                                   std::to_string(inst.metric.n));
    AuditReport rep;
    rep.scheme_id = "bipartite-certify";
    rep.kernel = kernel_name<T>();
    rep.tol = tol;

    // The implication needs only the expansion half of the distortion claim.
    T emb;
    for (int i = 0; i < F.n; ++i)
        for (int j = i + 1; j < F.n; ++j) {
            emb = F.linf_dist(i, j);
            double ratio = to_double(emb) / to_double(inst.metric.at(i, j));
            if (ratio > t * (1 + tol))
                throw not_gprime_embedding("pair expands by " + std::to_string(ratio) +
                                           " > t = " + std::to_string(t));
        }

    auto satisfied = [&](int col, int a, int b) {
        T diff = abs_val(F.at(a, col) - F.at(b, col));
        if constexpr (is_exact_v<T>) return diff >= inst.metric.at(a, b);
        else return to_double(diff) >= to_double(inst.metric.at(a, b)) * (1 - tol);
    };

    int cols_l_neq_r = 0;
    AuditCheck impl;
    impl.name = "a3-blocked-where-l-equals-r";
    impl.pass = true;
    for (int c = 0; c < F.d; ++c) {
        T diff = abs_val(F.at(inst.l, c) - F.at(inst.r, c));
        bool lr_equal;
        if constexpr (is_exact_v<T>) lr_equal = diff == T(0);
        else lr_equal = to_double(diff) <= tol;
        if (!lr_equal) {
            ++cols_l_neq_r;
            continue;
        }
        for (const auto& [a, b] : inst.A3)
            if (satisfied(c, a, b)) {
                impl.pass = false;
                Witness w;
                w.what = "a3-satisfied-despite-l-equals-r (implies expansion > t)";
                w.i = a;
                w.j = b;
                w.col = c;
                w.achieved = to_double(abs_val(F.at(a, c) - F.at(b, c)));
                w.bound = 2 * t;
                impl.witnesses.push_back(std::move(w));
            }
    }
    rep.checks.push_back(std::move(impl));

    auto count_satisfied = [&](const std::vector<std::pair<int, int>>& pairs) {
        int cnt = 0;
        for (const auto& [a, b] : pairs) {
            bool any = false;
            for (int c = 0; c < F.d && !any; ++c) any = satisfied(c, a, b);
            cnt += any;
        }
        return cnt;
    };
    int s1 = count_satisfied(inst.A1), s2 = count_satisfied(inst.A2), s3 = count_satisfied(inst.A3);
    rep.add_stat("columns_l_neq_r", std::to_string(cols_l_neq_r));
    rep.add_stat("a1_satisfied", std::to_string(s1) + "/" + std::to_string(inst.A1.size()));
    rep.add_stat("a2_satisfied", std::to_string(s2) + "/" + std::to_string(inst.A2.size()));
    rep.add_stat("a3_satisfied", std::to_string(s3) + "/" + std::to_string(inst.A3.size()));
    return rep;
}

}  // namespace metrembed
