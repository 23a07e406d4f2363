#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "metrembed/auditor.hpp"
#include "metrembed/embed_general.hpp"
#include "metrembed/graph.hpp"

using namespace metrembed;

namespace {

MetricSpace<Rat> random_rational_metric(int n, Rng& rng) {
    // metric closure of a random complete graph with rational weights
    std::vector<WeightedEdge<Rat>> edges;
    for (int v = 1; v < n; ++v) {
        int u = static_cast<int>(rng.next_below(v));
        edges.push_back({u, v, Rat(static_cast<int>(rng.next_in(1, 16)), static_cast<int>(rng.next_in(1, 4)))});
    }
    for (int e = 0; e < n; ++e) {
        int u = static_cast<int>(rng.next_below(n)), v = static_cast<int>(rng.next_below(n));
        if (u != v)
            edges.push_back({u, v, Rat(static_cast<int>(rng.next_in(1, 16)), static_cast<int>(rng.next_in(1, 4)))});
    }
    for (auto& e : edges) e.w.canonicalize();
    return metric_from_graph(n, edges);
}

}  // namespace

TEST_CASE("chi: presets and base cases") {
    BetaSchedule exp1 = preset_beta("exp", 1);
    CHECK(chi(exp1, 4) == 2);
    CHECK(chi(exp1, 5) == 3);
    CHECK(chi(exp1, 1) == 1);

    BetaSchedule dexp = preset_beta("doubly-exp");
    CHECK(chi(dexp, 16) == 2);
    CHECK(chi(dexp, 17) == 3);
    CHECK(chi(dexp, 1) == 1);

    BetaSchedule small = custom_beta({2, 3});
    CHECK(chi(small, 3) == 2);
    CHECK_THROWS_WITH_AS(chi(small, 4), doctest::Contains("ScheduleExhausted"), Error);

    // a schedule that never reaches n stops the embedding too
    MetricSpace<Rat> M(5);
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j)
            if (i != j) M.at(i, j) = Rat(1);
    CHECK_THROWS_WITH_AS(meta_embedding(M, PriorityOrdering::identity(5), small),
                         doctest::Contains("ScheduleExhausted"), Error);
}

TEST_CASE("preset_beta: values and domain checks") {
    BetaSchedule e2 = preset_beta("exp", 2);
    CHECK(e2.eval(1) == 4);
    CHECK(e2.eval(3) == 64);
    BetaSchedule d = preset_beta("doubly-exp");
    CHECK(d.eval(1) == 4);
    CHECK(d.eval(3) == 256);
    CHECK_THROWS_WITH_AS(preset_beta("exp", 0), doctest::Contains("BadParameter"), Error);
    CHECK_THROWS_AS(custom_beta({3, 2}), Error);
}

TEST_CASE("meta embedding: two-point example is exact") {
    MetricSpace<Rat> M(2);
    M.at(0, 1) = M.at(1, 0) = Rat(5);
    auto pi = PriorityOrdering::identity(2);
    auto F = meta_embedding(M, pi, preset_beta("exp", 1));
    REQUIRE(F.d == 2);
    CHECK(F.at(0, 0) == Rat(0));
    CHECK(F.at(0, 1) == Rat(5));
    CHECK(F.at(1, 0) == Rat(5));
    CHECK(F.at(1, 1) == Rat(0));
    CHECK(F.linf_dist(0, 1) == Rat(5));
}

TEST_CASE("meta embedding: uniform metric satisfies the contraction bound") {
    const int n = 8;
    MetricSpace<Rat> M(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j) M.at(i, j) = Rat(1);
    auto pi = PriorityOrdering::identity(n);
    BetaSchedule beta = preset_beta("exp", 1);
    auto F = meta_embedding(M, pi, beta);
    auto rep = audit_prioritized_contractive(M, pi, F,
                                             [&](int j) { return 2ll * chi(beta, j); });
    CHECK(rep.pass());
}

TEST_CASE("meta embedding: optimized path equals the naive oracle exactly") {
    Rng rng(31337);
    for (auto kind : {preset_beta("exp", 1), preset_beta("exp", 2), preset_beta("doubly-exp")}) {
        for (int trial = 0; trial < 4; ++trial) {
            int n = 2 + static_cast<int>(rng.next_below(23));
            auto M = random_rational_metric(n, rng);
            auto pi = PriorityOrdering::random(n, rng);
            auto fast = meta_embedding(M, pi, kind);
            auto slow = reference::meta_embedding_naive(M, pi, kind);
            REQUIRE(fast.d == slow.d);
            for (int r = 0; r < n; ++r)
                for (int c = 0; c < fast.d; ++c) REQUIRE(fast.at(r, c) == slow.at(r, c));
        }
    }
}

TEST_CASE("meta embedding: Lipschitz columns and prioritized dimension") {
    Rng rng(4242);
    int n = 64;
    auto M = random_rational_metric(n, rng);
    auto pi = PriorityOrdering::random(n, rng);
    BetaSchedule dexp = preset_beta("doubly-exp");
    auto F = meta_embedding(M, pi, dexp);

    // every column is 1-Lipschitz
    for (int c = 0; c < F.d; ++c)
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                REQUIRE(abs_val(F.at(i, c) - F.at(j, c)) <= M.at(i, j));

    // support of x_j inside the first beta(chi(j)) columns, hence <= j^2 for j >= 2
    auto bound = [&](int j) {
        return static_cast<std::int64_t>(std::min<std::uint64_t>(dexp.eval(chi(dexp, j)),
                                                                 static_cast<std::uint64_t>(n)));
    };
    CHECK(audit_prioritized_dimension(F, pi, bound).pass());
    for (int j = 2; j <= n; ++j) {
        int p = pi.order[j - 1];
        CHECK(F.support_len(p) <= static_cast<std::int64_t>(j) * j);
    }
}

TEST_CASE("meta embedding: expansion <= 1 and contraction <= 2 chi over prioritized pairs") {
    Rng rng(999);
    int n = 64;
    auto M = random_rational_metric(n, rng);
    auto pi = PriorityOrdering::random(n, rng);
    for (auto beta : {preset_beta("exp", 1), preset_beta("doubly-exp")}) {
        auto F = meta_embedding(M, pi, beta);
        auto rep = audit_distortion(M, F);
        CHECK(rep.expansion <= 1.0);
        auto pri = audit_prioritized_contractive(M, pi, F, [&](int j) { return 2ll * chi(beta, j); });
        CHECK(pri.pass());
    }
}

TEST_CASE("beta: saturation and custom tables") {
    BetaSchedule wide = preset_beta("exp", 16);
    CHECK(wide.eval(4) == BetaSchedule::kSaturated);  // 2^64 saturates
    CHECK(chi(wide, 1000000) == 2);

    BetaSchedule dexp = preset_beta("doubly-exp");
    CHECK(dexp.eval(6) == BetaSchedule::kSaturated);

    // a custom schedule drives the meta embedding like any preset
    BetaSchedule table = custom_beta({1, 3, 9, 27, 81});
    Rng rng(77);
    auto M = random_rational_metric(12, rng);
    auto pi = PriorityOrdering::random(12, rng);
    auto F = meta_embedding(M, pi, table);
    auto G = reference::meta_embedding_naive(M, pi, table);
    for (int r = 0; r < 12; ++r)
        for (int c = 0; c < 12; ++c) REQUIRE(F.at(r, c) == G.at(r, c));
    CHECK(audit_prioritized_contractive(M, pi, F, [&](int j) { return 2ll * chi(table, j); }).pass());
}

TEST_CASE("uniform clique embedding") {
    auto F2 = uniform_clique_embedding(2, Rat(1));
    CHECK(F2.d == 1);
    CHECK(F2.linf_dist(0, 1) == Rat(1));

    auto F4 = uniform_clique_embedding(4, Rat(1));
    CHECK(F4.d == 2);
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) CHECK(F4.linf_dist(i, j) == Rat(1));

    auto F5 = uniform_clique_embedding(5, Rat(2));
    CHECK(F5.d == 3);
    for (int i = 0; i < 5; ++i)
        for (int j = i + 1; j < 5; ++j) CHECK(F5.linf_dist(i, j) == Rat(2));

    CHECK(uniform_clique_embedding(1, Rat(1)).d == 0);
    CHECK_THROWS_AS(uniform_clique_embedding(0, Rat(1)), Error);
}

TEST_CASE("embedding matrix: append mismatch and ordering validation") {
    EmbeddingMatrix<Rat> A(3, 1), B(2, 1);
    CHECK_THROWS_WITH_AS(A.append_columns(B), doctest::Contains("SizeMismatch"), Error);
    CHECK_THROWS_AS(PriorityOrdering::from_order({0, 0, 1}), Error);
    CHECK_THROWS_AS(PriorityOrdering::from_order({0, 3}), Error);
}
