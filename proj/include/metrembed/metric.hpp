#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "metrembed/errors.hpp"
#include "metrembed/numeric.hpp"
#include "metrembed/parallel.hpp"
#include "metrembed/rng.hpp"

namespace metrembed {

// Dense symmetric distance matrix over n indexed points. The universal input
// of every scheme in the library.
template <class T>
struct MetricSpace {
    int n = 0;
    std::vector<T> dist;  // row-major n*n
    std::vector<std::string> names;
    // Off-diagonal zeros admitted (weight-0 tree edges); audits report such
    // pairs separately instead of dividing by them.
    bool pseudometric = false;

    MetricSpace() = default;
    explicit MetricSpace(int n_) : n(n_), dist(static_cast<size_t>(n_) * n_, T(0)) {}

    T& at(int i, int j) { return dist[static_cast<size_t>(i) * n + j]; }
    const T& at(int i, int j) const { return dist[static_cast<size_t>(i) * n + j]; }
};

// Permutation pi = (x_1, ..., x_n); rank j is 1-based throughout.
struct PriorityOrdering {
    std::vector<int> order;  // order[j-1] = point with rank j
    std::vector<int> rank;   // rank[p]    = rank of point p (1-based)

    static PriorityOrdering from_order(std::vector<int> ord) {
        PriorityOrdering pi;
        pi.order = std::move(ord);
        int n = static_cast<int>(pi.order.size());
        pi.rank.assign(n, 0);
        std::vector<char> seen(n, 0);
        for (int j = 0; j < n; ++j) {
            int p = pi.order[j];
            if (p < 0 || p >= n || seen[p]) throw bad_parameter("ordering is not a permutation");
            seen[p] = 1;
            pi.rank[p] = j + 1;
        }
        return pi;
    }

    static PriorityOrdering identity(int n) {
        std::vector<int> ord(n);
        for (int i = 0; i < n; ++i) ord[i] = i;
        return from_order(std::move(ord));
    }

    static PriorityOrdering random(int n, Rng& rng) {
        std::vector<int> ord(n);
        for (int i = 0; i < n; ++i) ord[i] = i;
        for (int i = n - 1; i > 0; --i)
            std::swap(ord[i], ord[static_cast<int>(rng.next_below(static_cast<std::uint64_t>(i) + 1))]);
        return from_order(std::move(ord));
    }

    int n() const { return static_cast<int>(order.size()); }
};

// Points in R^m under an l_p norm; p = infinity() is the max norm.
template <class T>
struct PointSet {
    int n = 0, m = 0;
    double p = 2.0;
    std::vector<T> coords;  // row-major n*m

    T& at(int i, int k) { return coords[static_cast<size_t>(i) * m + k]; }
    const T& at(int i, int k) const { return coords[static_cast<size_t>(i) * m + k]; }

    static PointSet from_rows(const std::vector<std::vector<T>>& rows, double p) {
        if (p < 1.0) throw bad_parameter("l_p norm needs p >= 1");
        PointSet ps;
        ps.p = p;
        ps.n = static_cast<int>(rows.size());
        ps.m = ps.n ? static_cast<int>(rows[0].size()) : 0;
        for (const auto& r : rows)
            if (static_cast<int>(r.size()) != ps.m)
                throw dimension_mismatch("point rows have different dimensions");
        ps.coords.reserve(static_cast<size_t>(ps.n) * ps.m);
        for (const auto& r : rows) ps.coords.insert(ps.coords.end(), r.begin(), r.end());
        return ps;
    }
};

inline double lp_distance(const PointSet<double>& P, int i, int j) {
    if (std::isinf(P.p)) {
        double best = 0;
        for (int k = 0; k < P.m; ++k) best = std::max(best, std::fabs(P.at(i, k) - P.at(j, k)));
        return best;
    }
    if (P.p == 1.0) {
        double s = 0;
        for (int k = 0; k < P.m; ++k) s += std::fabs(P.at(i, k) - P.at(j, k));
        return s;
    }
    if (P.p == 2.0) {
        double s = 0;
        for (int k = 0; k < P.m; ++k) {
            double d = P.at(i, k) - P.at(j, k);
            s += d * d;
        }
        return std::sqrt(s);
    }
    double s = 0;
    for (int k = 0; k < P.m; ++k) s += std::pow(std::fabs(P.at(i, k) - P.at(j, k)), P.p);
    return std::pow(s, 1.0 / P.p);
}

// dist[i][j] = ||p_i - p_j||_p, float kernel for arbitrary p >= 1.
inline MetricSpace<double> metric_from_points(const PointSet<double>& P) {
    MetricSpace<double> M(P.n);
    parallel_for(P.n, [&](std::int64_t i) {
        for (int j = 0; j < P.n; ++j) M.at(static_cast<int>(i), j) = lp_distance(P, static_cast<int>(i), j);
    });
    return M;
}

// Exact kernel: only p = 1 and p = infinity give rational distances from
// rational coordinates.
inline MetricSpace<Rat> metric_from_points(const PointSet<Rat>& P) {
    if (P.p != 1.0 && !std::isinf(P.p))
        throw unsupported_norm("rational point metrics need p in {1, inf}");
    const bool inf = std::isinf(P.p);
    MetricSpace<Rat> M(P.n);
    parallel_for(P.n, [&](std::int64_t ii) {
        int i = static_cast<int>(ii);
        Rat acc, d;
        for (int j = 0; j < P.n; ++j) {
            acc = 0;
            for (int k = 0; k < P.m; ++k) {
                d = P.at(i, k) - P.at(j, k);
                mpq_abs(d.get_mpq_t(), d.get_mpq_t());
                if (inf) {
                    if (d > acc) mpq_swap(acc.get_mpq_t(), d.get_mpq_t());
                } else {
                    acc += d;
                }
            }
            M.at(i, j) = acc;
        }
    });
    return M;
}

struct MetricViolation {
    std::string kind;  // "diagonal" | "negative" | "symmetry" | "triangle"
    int i = -1, j = -1, k = -1;
    double magnitude = 0;  // how far past the tolerance, in relative terms
};

struct ValidationReport {
    std::vector<MetricViolation> violations;
    int zero_offdiag_pairs = 0;  // pseudometric section, not a failure
    bool ok() const { return violations.empty(); }
};

// Lists every symmetry/diagonal/triangle violation beyond the relative
// tolerance. Exact comparisons when T is rational (tol ignored).
template <class T>
ValidationReport validate_metric(const MetricSpace<T>& M, double tol = 1e-9) {
    ValidationReport rep;
    const int n = M.n;
    for (int i = 0; i < n; ++i) {
        if (!(M.at(i, i) == T(0))) rep.violations.push_back({"diagonal", i, i, -1, to_double(M.at(i, i))});
        for (int j = i + 1; j < n; ++j) {
            if (M.at(i, j) < T(0)) rep.violations.push_back({"negative", i, j, -1, to_double(M.at(i, j))});
            if constexpr (is_exact_v<T>) {
                if (!(M.at(i, j) == M.at(j, i))) rep.violations.push_back({"symmetry", i, j, -1, 0});
            } else {
                double a = M.at(i, j), b = M.at(j, i);
                if (std::fabs(a - b) > tol * std::max({std::fabs(a), std::fabs(b), 1e-300}))
                    rep.violations.push_back({"symmetry", i, j, -1, std::fabs(a - b)});
            }
            if (M.at(i, j) == T(0)) ++rep.zero_offdiag_pairs;
        }
    }
    // Triangle scan: d(i,k) <= d(i,j) + d(j,k). Collected per i so the report
    // order does not depend on the thread schedule.
    std::vector<std::vector<MetricViolation>> per_i(n);
    parallel_for(n, [&](std::int64_t ii) {
        int i = static_cast<int>(ii);
        for (int j = 0; j < n; ++j) {
            if (j == i) continue;
            for (int k = 0; k < n; ++k) {
                if (k == i || k == j) continue;
                if constexpr (is_exact_v<T>) {
                    if (M.at(i, k) > M.at(i, j) + M.at(j, k))
                        per_i[i].push_back({"triangle", i, j, k, 0});
                } else {
                    double lhsd = M.at(i, k), rhsd = M.at(i, j) + M.at(j, k);
                    if (lhsd > rhsd + tol * std::max(lhsd, 1e-300))
                        per_i[i].push_back({"triangle", i, j, k, lhsd - rhsd});
                }
            }
        }
    });
    for (auto& v : per_i) rep.violations.insert(rep.violations.end(), v.begin(), v.end());
    return rep;
}

}  // namespace metrembed
