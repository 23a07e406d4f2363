#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "metrembed/labeling.hpp"
#include "metrembed/parallel.hpp"
#include "metrembed/rng.hpp"

namespace metrembed {

// One layer's random projection: a target_dim x source_dim matrix with
// entries N(0,1)/sqrt(target_dim), reproducible from (seed, layer).
struct JLLayerMap {
    int layer = 0;
    int source_dim = 0;
    int target_dim = 0;
    std::uint64_t seed = 0;
    std::vector<double> entries;  // row-major target_dim x source_dim

    static JLLayerMap generate(int layer, int source_dim, int target_dim, std::uint64_t master_seed) {
        JLLayerMap m;
        m.layer = layer;
        m.source_dim = source_dim;
        m.target_dim = target_dim;
        m.seed = master_seed;
        m.entries.resize(static_cast<size_t>(target_dim) * source_dim);
        Rng rng = Rng::substream(master_seed, static_cast<std::uint64_t>(layer));
        double inv = 1.0 / std::sqrt(static_cast<double>(target_dim));
        for (auto& e : m.entries) e = rng.next_gauss() * inv;
        return m;
    }

    void apply(const double* point, double* out) const {
        for (int r = 0; r < target_dim; ++r) {
            double s = 0;
            const double* row = entries.data() + static_cast<size_t>(r) * source_dim;
            for (int c = 0; c < source_dim; ++c) s += row[c] * point[c];
            out[r] = s;
        }
    }
};

// Per-layer JL target dimension: ceil(c_jl * eps^-2 * ln max(|S_i|, 2)).
inline int jl_target_dim(double c_jl, double eps, std::int64_t set_size) {
    double d = c_jl / (eps * eps) * std::log(static_cast<double>(std::max<std::int64_t>(set_size, 2)));
    return static_cast<int>(std::ceil(d));
}

// Isometric map from l_1 into squared-L2 via per-coordinate interval
// indicators: for each original coordinate with sorted distinct values
// v_1 < ... < v_k, emit k-1 features sqrt(v_{t+1} - v_t) * [x >= v_{t+1}].
// Exact identity: ||phi(x) - phi(y)||_2^2 = ||x - y||_1.
template <class T>
struct SnowflakeMap {
    struct Feature {
        int coord;    // original coordinate
        T threshold;  // v_{t+1}
        T gap;        // v_{t+1} - v_t; the feature value is sqrt(gap)
    };
    std::vector<Feature> features;

    static SnowflakeMap build(const PointSet<T>& P) {
        if (P.p != 1.0) throw unsupported_norm("snowflake input must be an l_1 point set");
        SnowflakeMap map;
        for (int k = 0; k < P.m; ++k) {
            std::vector<T> vals;
            vals.reserve(P.n);
            for (int i = 0; i < P.n; ++i) vals.push_back(P.at(i, k));
            std::sort(vals.begin(), vals.end());
            vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
            for (size_t t = 1; t < vals.size(); ++t)
                map.features.push_back({k, vals[t], vals[t] - vals[t - 1]});
        }
        return map;
    }

    // Float image with sqrt(gap) feature values; feeds the JL layers.
    PointSet<double> apply(const PointSet<T>& P) const {
        PointSet<double> out;
        out.n = P.n;
        out.m = static_cast<int>(features.size());
        out.p = 2.0;
        out.coords.assign(static_cast<size_t>(out.n) * out.m, 0.0);
        for (int i = 0; i < P.n; ++i)
            for (size_t f = 0; f < features.size(); ++f)
                if (P.at(i, features[f].coord) >= features[f].threshold)
                    out.coords[static_cast<size_t>(i) * out.m + f] =
                        std::sqrt(to_double(features[f].gap));
        return out;
    }

    // ||phi(x) - phi(y)||_2^2 without square roots; exact in the rational kernel.
    T squared_l2(const PointSet<T>& P, int i, int j) const {
        T acc(0);
        for (const auto& f : features) {
            bool bi = P.at(i, f.coord) >= f.threshold;
            bool bj = P.at(j, f.coord) >= f.threshold;
            if (bi != bj) acc += f.gap;
        }
        return acc;
    }
};

template <class T>
PointSet<double> l1_snowflake_to_l2(const PointSet<T>& P) {
    return SnowflakeMap<T>::build(P).apply(P);
}

// Layered JL labels over an l_2 point set (float kernel). Layer i projects
// all points with a map targeting ceil(c_jl * eps^-2 * ln max(|S_i|, 2))
// dimensions where S_i = first min(n, 2^(2^i)) points of pi; the label of
// x_j stores layers 0..layer_index(j). p_source = 1 marks the scheme as
// built from snowflaked l_1 input, making query answers squared.
inline LabelSet<double> jl_layered_labels_l2(const PointSet<double>& P, const PriorityOrdering& pi,
                                             double eps, std::uint64_t seed, double c_jl = 8.0,
                                             int p_source = 2) {
    if (!(eps > 0.0 && eps < 1.0)) throw bad_epsilon("eps must lie in (0, 1)");
    if (P.p != 2.0) throw unsupported_norm("jl layers run on l_2 point sets");
    if (pi.n() != P.n) throw size_mismatch("ordering size != point count");
    const int n = P.n;
    LabelSet<double> L;
    L.scheme_id = kJlSchemeId;
    L.n = n;
    L.eps = eps;
    L.c_jl = c_jl;
    L.seed = seed;
    L.p_source = p_source;
    L.labels.resize(n);
    if (n == 0) return L;

    const int top = layer_index(n);
    std::vector<std::vector<double>> images(top + 1);
    for (int i = 0; i <= top; ++i) {
        std::uint64_t cap = (1ull << i) >= 63 ? ~0ull : (1ull << (1ull << i));
        std::int64_t si = static_cast<std::int64_t>(std::min<std::uint64_t>(cap, static_cast<std::uint64_t>(n)));
        int dim = jl_target_dim(c_jl, eps, si);
        L.layer_dims.push_back(dim);
        // The matrix is drawn serially from the layer substream, so results
        // do not depend on the thread count; only the apply step is parallel.
        JLLayerMap map = JLLayerMap::generate(i, P.m, dim, seed);
        images[i].assign(static_cast<size_t>(n) * dim, 0.0);
        parallel_for(n, [&](std::int64_t p) {
            map.apply(P.coords.data() + static_cast<size_t>(p) * P.m,
                      images[i].data() + static_cast<size_t>(p) * dim);
        });
    }
    for (int j = 1; j <= n; ++j) {
        int p = pi.order[j - 1];
        Label<double>& lab = L.labels[p];
        lab.scheme_id = kJlSchemeId;
        lab.rank = j;
        int layers = layer_index(j);
        for (int i = 0; i <= layers; ++i) {
            int dim = L.layer_dims[i];
            const double* img = images[i].data() + static_cast<size_t>(p) * dim;
            lab.payload.insert(lab.payload.end(), img, img + dim);
        }
    }
    return L;
}

// Labels for p in {1, 2}: l_1 inputs go through the snowflake first and the
// scheme remembers to square its answers.
inline LabelSet<double> jl_layered_labels(const PointSet<double>& P, const PriorityOrdering& pi,
                                          double eps, std::uint64_t seed, double c_jl = 8.0) {
    if (P.p == 1.0) return jl_layered_labels_l2(l1_snowflake_to_l2(P), pi, eps, seed, c_jl, 1);
    if (P.p == 2.0) return jl_layered_labels_l2(P, pi, eps, seed, c_jl, 2);
    throw unsupported_norm("jl labels support p in {1, 2}");
}

// ||g_l(x_j) - g_l(x_j')||_2 at l = layer_index(min rank); squared when the
// scheme was built from l_1 input.
inline double jl_query(const LabelSet<double>& scheme, const Label<double>& la, const Label<double>& lb) {
    if (la.scheme_id != kJlSchemeId || lb.scheme_id != kJlSchemeId ||
        scheme.scheme_id != kJlSchemeId)
        throw scheme_mismatch("jl_query needs two " + std::string(kJlSchemeId) + " labels");
    if (la.rank == lb.rank) return 0.0;
    int lo_rank = std::min(la.rank, lb.rank);
    int layer = layer_index(lo_rank);
    if (layer >= static_cast<int>(scheme.layer_dims.size()))
        throw scheme_mismatch("label lacks its query layer");
    size_t off = 0;
    for (int i = 0; i < layer; ++i) off += static_cast<size_t>(scheme.layer_dims[i]);
    size_t dim = static_cast<size_t>(scheme.layer_dims[layer]);
    if (la.payload.size() < off + dim || lb.payload.size() < off + dim)
        throw scheme_mismatch("payload truncated below the query layer");
    double s = 0;
    for (size_t c = 0; c < dim; ++c) {
        double d = la.payload[off + c] - lb.payload[off + c];
        s += d * d;
    }
    return scheme.p_source == 1 ? s : std::sqrt(s);
}

inline double jl_query(const LabelSet<double>& scheme, int a, int b) {
    return jl_query(scheme, scheme.labels[a], scheme.labels[b]);
}

// Recorded word bound for jl/v1: C * eps^-2 * log2(j+1) + B0 with C = 3*c_jl
// and B0 = d_0 + d_1 + 8 (the first two layers plus the index word and
// per-layer ceilings). Audits assert labels against exactly this.
inline std::int64_t jl_word_bound(double c_jl, double eps, const std::vector<int>& layer_dims, int j) {
    double c = 3.0 * c_jl;
    double b0 = 8.0 + (layer_dims.size() > 0 ? layer_dims[0] : 0) +
                (layer_dims.size() > 1 ? layer_dims[1] : 0);
    return static_cast<std::int64_t>(std::ceil(c / (eps * eps) * std::log2(static_cast<double>(j) + 1.0) + b0));
}

namespace reference {

// Serial projection, kept as the oracle for the parallel apply.
inline std::vector<double> jl_apply_serial(const JLLayerMap& map, const PointSet<double>& P) {
    std::vector<double> out(static_cast<size_t>(P.n) * map.target_dim, 0.0);
    for (int p = 0; p < P.n; ++p)
        map.apply(P.coords.data() + static_cast<size_t>(p) * P.m,
                  out.data() + static_cast<size_t>(p) * map.target_dim);
    return out;
}

}  // namespace reference

}  // namespace metrembed
