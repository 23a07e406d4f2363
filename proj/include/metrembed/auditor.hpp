#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "metrembed/embedding.hpp"
#include "metrembed/metric.hpp"
#include "metrembed/parallel.hpp"

namespace metrembed {

// A reported worst case. Re-evaluating the named pair must reproduce the
// achieved value (auditor self-consistency).
struct Witness {
    std::string what;
    int i = -1, j = -1, col = -1;
    double achieved = 0;
    double bound = 0;
    std::string exact;  // rational kernel only
};

struct AuditCheck {
    std::string name;
    bool pass = true;
    std::string details;
    std::vector<Witness> witnesses;
};

struct AuditReport {
    std::string scheme_id;
    std::string kernel;
    double tol = 0;
    std::vector<AuditCheck> checks;
    std::vector<std::pair<std::string, std::string>> stats;  // ordered, stringly

    // Distortion summary (filled by audit_distortion).
    double expansion = std::numeric_limits<double>::quiet_NaN();
    double contraction = std::numeric_limits<double>::quiet_NaN();
    double distortion = std::numeric_limits<double>::quiet_NaN();
    int zero_distance_pairs = 0;

    bool pass() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }
    void add_stat(const std::string& k, const std::string& v) { stats.emplace_back(k, v); }
};

namespace detail {

// Worst-pair tracker with a total order (value, then pair index) so parallel
// and serial scans agree bit for bit.
template <class T>
struct WorstPair {
    T value{0};
    std::int64_t pair = -1;  // i * n + j, -1 = empty
    void offer(const T& v, std::int64_t p) {
        if (pair < 0 || v > value || (v == value && p < pair)) {
            value = v;
            pair = p;
        }
    }
    void merge(const WorstPair& o) {
        if (o.pair >= 0) offer(o.value, o.pair);
    }
};

}  // namespace detail

// expansion = max ||F(x)-F(y)||inf / d(x,y), contraction = max d / ||.||.
// Pairs with d = 0 are skipped and counted separately; a zero embedded
// distance against d > 0 is an infinite-contraction violation.
template <class T>
AuditReport audit_distortion(const MetricSpace<T>& M, const EmbeddingMatrix<T>& F, double tol = 1e-9) {
    if (F.n != M.n) throw size_mismatch("embedding rows != metric points");
    AuditReport rep;
    rep.kernel = kernel_name<T>();
    rep.tol = tol;
    const int n = M.n;

    int nt = max_threads();
    std::vector<detail::WorstPair<T>> exp_w(nt), con_w(nt);
    std::vector<std::int64_t> zero_pairs(nt, 0), flat_pairs(nt, 0);
#ifdef _OPENMP
#pragma omp parallel
#endif
    {
#ifdef _OPENMP
        int tid = omp_get_thread_num();
#else
        int tid = 0;
#endif
        T emb, ratio;
#ifdef _OPENMP
#pragma omp for schedule(static)
#endif
        for (int i = 0; i < n; ++i) {
            for (int j = i + 1; j < n; ++j) {
                const T& d = M.at(i, j);
                emb = F.linf_dist(i, j);
                std::int64_t p = static_cast<std::int64_t>(i) * n + j;
                if (d == T(0)) {
                    ++zero_pairs[tid];
                    continue;
                }
                if (emb == T(0)) {
                    ++flat_pairs[tid];
                    continue;
                }
                ratio = emb / d;
                exp_w[tid].offer(ratio, p);
                ratio = d / emb;
                con_w[tid].offer(ratio, p);
            }
        }
    }
    detail::WorstPair<T> expansion, contraction;
    std::int64_t zeros = 0, flats = 0;
    for (int t = 0; t < nt; ++t) {
        expansion.merge(exp_w[t]);
        contraction.merge(con_w[t]);
        zeros += zero_pairs[t];
        flats += flat_pairs[t];
    }

    rep.zero_distance_pairs = static_cast<int>(zeros);
    auto mk_witness = [&](const char* what, const detail::WorstPair<T>& w) {
        Witness wit;
        wit.what = what;
        if (w.pair >= 0) {
            wit.i = static_cast<int>(w.pair / n);
            wit.j = static_cast<int>(w.pair % n);
            wit.achieved = to_double(w.value);
            if constexpr (is_exact_v<T>) wit.exact = rat_to_string(w.value);
        }
        return wit;
    };

    rep.expansion = expansion.pair >= 0 ? to_double(expansion.value) : 1.0;
    rep.contraction = contraction.pair >= 0 ? to_double(contraction.value) : 1.0;
    rep.distortion = rep.expansion * rep.contraction;
    AuditCheck chk;
    chk.name = "distortion";
    chk.pass = flats == 0;
    chk.details = flats ? "embedded distance 0 for a pair at positive distance" : "";
    chk.witnesses.push_back(mk_witness("max-expansion", expansion));
    chk.witnesses.push_back(mk_witness("max-contraction", contraction));
    rep.checks.push_back(std::move(chk));
    rep.add_stat("pairs_flattened", std::to_string(flats));
    rep.add_stat("pairs_zero_distance", std::to_string(zeros));
    return rep;
}

// Eq.-style prioritized contractive audit: for every j < i under pi,
//   d(x_j, x_i) / alpha(j) <= ||f(x_j) - f(x_i)||inf <= d(x_j, x_i).
// alpha is indexed by the smaller rank. Exact in the rational kernel.
template <class T>
AuditReport audit_prioritized_contractive(const MetricSpace<T>& M, const PriorityOrdering& pi,
                                          const EmbeddingMatrix<T>& F,
                                          const std::function<std::int64_t(int)>& alpha,
                                          double tol = 1e-9, int max_witnesses = 16) {
    if (F.n != M.n || pi.n() != M.n) throw size_mismatch("prioritized audit size mismatch");
    AuditReport rep;
    rep.kernel = kernel_name<T>();
    rep.tol = tol;
    const int n = M.n;
    std::vector<std::vector<Witness>> per_rank(n);
    parallel_for(n, [&](std::int64_t jj) {
        int jrank = static_cast<int>(jj) + 1;
        int pj = pi.order[jrank - 1];
        T emb;
        std::int64_t a = alpha(jrank);
        for (int irank = jrank + 1; irank <= n; ++irank) {
            int pi_i = pi.order[irank - 1];
            const T& d = M.at(pj, pi_i);
            emb = F.linf_dist(pj, pi_i);
            bool upper_ok, lower_ok;
            if constexpr (is_exact_v<T>) {
                upper_ok = emb <= d;
                lower_ok = emb * T(static_cast<long>(a)) >= d;
            } else {
                upper_ok = emb <= d * (1 + tol);
                lower_ok = emb * static_cast<double>(a) >= d * (1 - tol);
            }
            if (!upper_ok || !lower_ok) {
                Witness w;
                w.what = upper_ok ? "contraction-beyond-alpha" : "expansion";
                w.i = pj;
                w.j = pi_i;
                w.achieved = d == T(0) ? 0.0 : to_double(emb) / to_double(d);
                w.bound = static_cast<double>(a);
                if constexpr (is_exact_v<T>) w.exact = rat_to_string(emb) + " vs d=" + rat_to_string(d);
                per_rank[jrank - 1].push_back(std::move(w));
            }
        }
    });
    AuditCheck chk;
    chk.name = "prioritized-contractive";
    std::int64_t violations = 0;
    for (auto& v : per_rank) {
        violations += static_cast<std::int64_t>(v.size());
        for (auto& w : v)
            if (static_cast<int>(chk.witnesses.size()) < max_witnesses) chk.witnesses.push_back(std::move(w));
    }
    chk.pass = violations == 0;
    chk.details = violations ? std::to_string(violations) + " violating pairs" : "";
    rep.checks.push_back(std::move(chk));
    rep.add_stat("violations", std::to_string(violations));
    return rep;
}

// Row of rank j may be nonzero only in the first bound(j) columns.
template <class T>
AuditReport audit_prioritized_dimension(const EmbeddingMatrix<T>& F, const PriorityOrdering& pi,
                                        const std::function<std::int64_t(int)>& bound,
                                        int max_witnesses = 16) {
    if (pi.n() != F.n) throw size_mismatch("ordering size != embedding rows");
    AuditReport rep;
    rep.kernel = kernel_name<T>();
    AuditCheck chk;
    chk.name = "prioritized-dimension";
    std::int64_t violations = 0;
    int max_support = 0;
    for (int jrank = 1; jrank <= F.n; ++jrank) {
        int p = pi.order[jrank - 1];
        int s = F.support_len(p);
        max_support = std::max(max_support, s);
        if (static_cast<std::int64_t>(s) > bound(jrank)) {
            ++violations;
            if (static_cast<int>(chk.witnesses.size()) < max_witnesses) {
                Witness w;
                w.what = "support-exceeds-bound";
                w.i = p;
                w.col = s;
                w.achieved = s;
                w.bound = static_cast<double>(bound(jrank));
                chk.witnesses.push_back(std::move(w));
            }
        }
    }
    chk.pass = violations == 0;
    chk.details = violations ? std::to_string(violations) + " rows exceed their bound" : "";
    rep.checks.push_back(std::move(chk));
    rep.add_stat("max_support", std::to_string(max_support));
    return rep;
}

// Per-coordinate satisfied-pair accounting. Defined only for non-expansive
// embeddings (after scaling); expansion beyond tol raises ExpansionViolation.
struct SatisfactionTable {
    int n = 0, d = 0;
    std::vector<std::vector<std::pair<int, int>>> satisfied_by_col;  // per column
    std::vector<std::pair<int, int>> unsatisfied;                    // pairs no column satisfies
    std::vector<std::pair<int, int>> zero_pairs;                     // d = 0, excluded
};

template <class T>
SatisfactionTable coordinate_satisfaction(const MetricSpace<T>& M, const EmbeddingMatrix<T>& F,
                                          double tol = 1e-9) {
    if (F.n != M.n) throw size_mismatch("embedding rows != metric points");
    const int n = M.n;
    SatisfactionTable tab;
    tab.n = n;
    tab.d = F.d;
    tab.satisfied_by_col.resize(F.d);
    T diff;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            const T& d = M.at(i, j);
            if (d == T(0)) {
                tab.zero_pairs.emplace_back(i, j);
                continue;
            }
            bool any = false;
            for (int c = 0; c < F.d; ++c) {
                diff = abs_val(F.at(i, c) - F.at(j, c));
                bool sat, expanded;
                if constexpr (is_exact_v<T>) {
                    sat = diff >= d;
                    expanded = diff > d;
                } else {
                    sat = diff >= to_double(d) * (1 - tol);
                    expanded = diff > to_double(d) * (1 + tol);
                }
                if (expanded)
                    throw expansion_violation("column " + std::to_string(c) + " expands pair (" +
                                              std::to_string(i) + "," + std::to_string(j) + ")");
                if (sat) {
                    tab.satisfied_by_col[c].emplace_back(i, j);
                    any = true;
                }
            }
            if (!any) tab.unsatisfied.emplace_back(i, j);
        }
    return tab;
}

// Queries every pair through the scheme decoder and checks the distortion-t
// band d <= answer <= t*d plus per-rank word bounds. For approximate schemes
// the band pass rate is reported; the caller decides what rate is required.
template <class T, class Query>
AuditReport audit_labels(const MetricSpace<T>& M, const PriorityOrdering& pi, Query&& query,
                         double t, const std::function<std::int64_t(int)>& size_bound,
                         const std::vector<int>& words_by_point, double tol = 1e-9,
                         int max_witnesses = 16) {
    AuditReport rep;
    rep.kernel = kernel_name<T>();
    rep.tol = tol;
    const int n = M.n;
    AuditCheck band;
    band.name = "distortion-band";
    std::int64_t in_band = 0, total = 0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            double ans = query(i, j);
            double d = to_double(M.at(i, j));
            ++total;
            bool ok = ans >= d * (1 - tol) && ans <= t * d * (1 + tol);
            if (d == 0) ok = std::fabs(ans) <= tol;
            if (ok) {
                ++in_band;
            } else if (static_cast<int>(band.witnesses.size()) < max_witnesses) {
                Witness w;
                w.what = "outside-band";
                w.i = i;
                w.j = j;
                w.achieved = ans;
                w.bound = d;
                band.witnesses.push_back(std::move(w));
            }
        }
    band.pass = in_band == total;
    band.details = std::to_string(in_band) + "/" + std::to_string(total) + " pairs in band";
    rep.add_stat("band_pass_rate", total ? std::to_string(static_cast<double>(in_band) / total) : "1");
    rep.checks.push_back(std::move(band));

    AuditCheck words;
    words.name = "word-bounds";
    std::int64_t word_violations = 0;
    for (int jrank = 1; jrank <= n; ++jrank) {
        int p = pi.order[jrank - 1];
        if (words_by_point[p] > size_bound(jrank)) {
            ++word_violations;
            if (static_cast<int>(words.witnesses.size()) < max_witnesses) {
                Witness w;
                w.what = "label-too-long";
                w.i = p;
                w.achieved = words_by_point[p];
                w.bound = static_cast<double>(size_bound(jrank));
                words.witnesses.push_back(std::move(w));
            }
        }
    }
    words.pass = word_violations == 0;
    rep.checks.push_back(std::move(words));
    return rep;
}

namespace reference {

// Plain serial full scans. These are the oracles the OpenMP paths above are
// required to agree with exactly (acceptance criterion on n <= 24).
template <class T>
AuditReport audit_distortion_serial(const MetricSpace<T>& M, const EmbeddingMatrix<T>& F,
                                    double tol = 1e-9) {
    if (F.n != M.n) throw size_mismatch("embedding rows != metric points");
    AuditReport rep;
    rep.kernel = kernel_name<T>();
    rep.tol = tol;
    const int n = M.n;
    detail::WorstPair<T> expansion, contraction;
    std::int64_t zeros = 0, flats = 0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            const T& d = M.at(i, j);
            T emb(0);
            for (int c = 0; c < F.d; ++c) emb = std::max(emb, abs_val(F.at(i, c) - F.at(j, c)));
            std::int64_t p = static_cast<std::int64_t>(i) * n + j;
            if (d == T(0)) {
                ++zeros;
                continue;
            }
            if (emb == T(0)) {
                ++flats;
                continue;
            }
            expansion.offer(emb / d, p);
            contraction.offer(d / emb, p);
        }
    rep.zero_distance_pairs = static_cast<int>(zeros);
    rep.expansion = expansion.pair >= 0 ? to_double(expansion.value) : 1.0;
    rep.contraction = contraction.pair >= 0 ? to_double(contraction.value) : 1.0;
    rep.distortion = rep.expansion * rep.contraction;
    AuditCheck chk;
    chk.name = "distortion";
    chk.pass = flats == 0;
    Witness we, wc;
    we.what = "max-expansion";
    wc.what = "max-contraction";
    if (expansion.pair >= 0) {
        we.i = static_cast<int>(expansion.pair / n);
        we.j = static_cast<int>(expansion.pair % n);
        we.achieved = to_double(expansion.value);
        if constexpr (is_exact_v<T>) we.exact = rat_to_string(expansion.value);
    }
    if (contraction.pair >= 0) {
        wc.i = static_cast<int>(contraction.pair / n);
        wc.j = static_cast<int>(contraction.pair % n);
        wc.achieved = to_double(contraction.value);
        if constexpr (is_exact_v<T>) wc.exact = rat_to_string(contraction.value);
    }
    chk.witnesses.push_back(we);
    chk.witnesses.push_back(wc);
    rep.checks.push_back(std::move(chk));
    rep.add_stat("pairs_flattened", std::to_string(flats));
    rep.add_stat("pairs_zero_distance", std::to_string(zeros));
    return rep;
}

}  // namespace reference

}  // namespace metrembed
