#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "metrembed/metric.hpp"

namespace metrembed {

inline constexpr const char* kExactSchemeId = "exact/v1";
inline constexpr const char* kJlSchemeId = "jl/v1";

// One point's label: its rank plus a payload of words (a word holds one
// distance value or one real coordinate).
template <class T>
struct Label {
    std::string scheme_id;
    int rank = 0;
    std::vector<T> payload;

    int size_in_words() const { return 1 + static_cast<int>(payload.size()); }
};

template <class T>
struct LabelSet {
    std::string scheme_id;
    int n = 0;
    std::vector<Label<T>> labels;  // indexed by point

    // jl/v1 metadata (defaults harmless for exact/v1)
    double eps = 0;
    double c_jl = 0;
    std::uint64_t seed = 0;
    int p_source = 2;             // 1 means snowflaked l1 input: queries are squared
    std::vector<int> layer_dims;  // target dimension per layer 0..L

    int max_words() const {
        int w = 0;
        for (const auto& l : labels) w = std::max(w, l.size_in_words());
        return w;
    }
};

// Exact prioritized labels: the label of x_j is (j, d(x_1,x_j), ..., d(x_{j-1},x_j)),
// j words in total.
template <class T>
LabelSet<T> exact_labels(const MetricSpace<T>& M, const PriorityOrdering& pi) {
    if (pi.n() != M.n) throw size_mismatch("ordering size != metric points");
    LabelSet<T> L;
    L.scheme_id = kExactSchemeId;
    L.n = M.n;
    L.labels.resize(M.n);
    for (int j = 1; j <= M.n; ++j) {
        int p = pi.order[j - 1];
        Label<T>& lab = L.labels[p];
        lab.scheme_id = kExactSchemeId;
        lab.rank = j;
        lab.payload.reserve(j - 1);
        for (int r = 1; r < j; ++r) lab.payload.push_back(M.at(pi.order[r - 1], p));
    }
    return L;
}

// d(x_a, x_b) from the two labels alone: the lower rank indexes into the
// higher-rank payload. Equal ranks mean the same point.
template <class T>
T exact_query(const Label<T>& la, const Label<T>& lb) {
    if (la.scheme_id != kExactSchemeId || lb.scheme_id != la.scheme_id)
        throw scheme_mismatch("exact_query needs two " + std::string(kExactSchemeId) + " labels");
    if (la.rank == lb.rank) return T(0);
    const Label<T>& lo = la.rank < lb.rank ? la : lb;
    const Label<T>& hi = la.rank < lb.rank ? lb : la;
    if (lo.rank < 1 || lo.rank > static_cast<int>(hi.payload.size()))
        throw scheme_mismatch("payload too short for rank " + std::to_string(lo.rank));
    return hi.payload[lo.rank - 1];
}

// Smallest i >= 0 with j <= 2^(2^i). Agrees with ceil(log log j) for j >= 3
// and pins down j in {1, 2}.
inline int layer_index(std::int64_t j) {
    if (j < 1) throw bad_parameter("ranks start at 1");
    // 2^(2^i): 2, 4, 16, 256, 65536, ...
    for (int i = 0;; ++i) {
        std::uint64_t cap = (1ull << i) >= 63 ? ~0ull : (1ull << (1ull << i));
        if (static_cast<std::uint64_t>(j) <= cap) return i;
    }
}

}  // namespace metrembed
