#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "metrembed/auditor.hpp"
#include "metrembed/embed_general.hpp"
#include "metrembed/embed_tree.hpp"
#include "metrembed/graph.hpp"
#include "metrembed/labeling.hpp"

using namespace metrembed;

namespace {

MetricSpace<Rat> random_metric(int n, Rng& rng) {
    std::vector<WeightedEdge<Rat>> edges;
    for (int v = 1; v < n; ++v)
        edges.push_back({static_cast<int>(rng.next_below(v)), v,
                         Rat(static_cast<int>(rng.next_in(1, 9)), static_cast<int>(rng.next_in(1, 3)))});
    for (int e = 0; e < n / 2; ++e) {
        int u = static_cast<int>(rng.next_below(n)), v = static_cast<int>(rng.next_below(n));
        if (u != v) edges.push_back({u, v, Rat(static_cast<int>(rng.next_in(1, 9)), 1)});
    }
    for (auto& e : edges) e.w.canonicalize();
    return metric_from_graph(n, edges);
}

}  // namespace

TEST_CASE("audit_distortion: isometric tree embedding scores 1/1 exactly") {
    Rng rng(1);
    WeightedTree T = random_tree(24, rng);
    auto M = metric_from_tree(T);
    auto F = llr_tree_embedding(T);
    auto rep = audit_distortion(M, F);
    CHECK(rep.expansion == 1.0);
    CHECK(rep.contraction == 1.0);
    CHECK(rep.distortion == 1.0);
    CHECK(rep.pass());

    // halving the matrix doubles the contraction and keeps expansion <= 1
    EmbeddingMatrix<Rat> half = F;
    for (auto& v : half.a) v /= 2;
    auto rep2 = audit_distortion(M, half);
    CHECK(rep2.contraction == 2.0);
    CHECK(rep2.expansion <= 1.0);
}

TEST_CASE("audit_distortion: size mismatch") {
    MetricSpace<Rat> M(3);
    EmbeddingMatrix<Rat> F(2, 1);
    CHECK_THROWS_WITH_AS(audit_distortion(M, F), doctest::Contains("SizeMismatch"), Error);
}

TEST_CASE("prioritized contractive: isometric passes alpha = 1, tight alpha fails") {
    Rng rng(2);
    WeightedTree T = random_tree(16, rng);
    auto M = metric_from_tree(T);
    auto pi = PriorityOrdering::random(16, rng);
    auto F = llr_tree_embedding(T);
    CHECK(audit_prioritized_contractive(M, pi, F, [](int) { return 1ll; }).pass());

    // alpha(j) = chi(j) (half the guarantee) is too tight. Witness found by
    // brute-force search: x4 sits close to x1, x3 close to x2, and the pair
    // (x3, x4) contracts to 4/10 < 1/chi(3) = 1/2.
    MetricSpace<Rat> W(4);
    auto set = [&](int i, int j, int v) { W.at(i, j) = W.at(j, i) = Rat(v); };
    set(0, 1, 8);
    set(0, 2, 8);
    set(0, 3, 4);
    set(1, 2, 4);
    set(1, 3, 8);
    set(2, 3, 10);
    REQUIRE(validate_metric(W).ok());
    auto id = PriorityOrdering::identity(4);
    BetaSchedule beta = preset_beta("exp", 1);
    auto FW = meta_embedding(W, id, beta);
    CHECK(FW.linf_dist(2, 3) == Rat(4));  // contracted by 10/4 > chi(3) = 2
    auto tight = audit_prioritized_contractive(W, id, FW,
                                               [&](int j) { return static_cast<std::int64_t>(chi(beta, j)); });
    CHECK(!tight.pass());
    REQUIRE(!tight.checks.empty());
    CHECK(!tight.checks[0].witnesses.empty());
    // the construction's 2*chi guarantee still holds
    CHECK(audit_prioritized_contractive(W, id, FW, [&](int j) { return 2ll * chi(beta, j); }).pass());
}

TEST_CASE("prioritized dimension: zero matrix passes any bound") {
    EmbeddingMatrix<Rat> F(6, 5);
    auto pi = PriorityOrdering::identity(6);
    CHECK(audit_prioritized_dimension(F, pi, [](int) { return 0ll; }).pass());
}

TEST_CASE("coordinate satisfaction: isometric embeddings satisfy every pair") {
    Rng rng(3);
    WeightedTree T = random_tree(12, rng);
    auto M = metric_from_tree(T);
    auto F = llr_tree_embedding(T);
    auto tab = coordinate_satisfaction(M, F);
    CHECK(tab.unsatisfied.empty());

    // scaling the whole matrix up must trigger ExpansionViolation
    EmbeddingMatrix<Rat> bad = F;
    for (auto& v : bad.a) v *= 3;
    CHECK_THROWS_WITH_AS(coordinate_satisfaction(M, bad), doctest::Contains("ExpansionViolation"),
                         Error);
}

TEST_CASE("coordinate satisfaction: monotone in added columns") {
    Rng rng(4);
    auto M = random_metric(10, rng);
    auto pi = PriorityOrdering::identity(10);
    auto F = meta_embedding(M, pi, preset_beta("exp", 1));
    EmbeddingMatrix<Rat> prefixF(10, 4);
    for (int r = 0; r < 10; ++r)
        for (int c = 0; c < 4; ++c) prefixF.at(r, c) = F.at(r, c);
    auto t1 = coordinate_satisfaction(M, prefixF);
    auto t2 = coordinate_satisfaction(M, F);
    CHECK(t2.unsatisfied.size() <= t1.unsatisfied.size());
    for (int c = 0; c < 4; ++c) CHECK(t1.satisfied_by_col[c] == t2.satisfied_by_col[c]);

    // and contraction never grows when columns are added
    auto r1 = audit_distortion(M, prefixF);
    auto r2 = audit_distortion(M, F);
    CHECK(r2.contraction <= r1.contraction);
}

TEST_CASE("audit_labels: exact scheme at t = 1, corrupted payload flagged") {
    Rng rng(5);
    auto M = random_metric(20, rng);
    auto pi = PriorityOrdering::random(20, rng);
    auto L = exact_labels(M, pi);
    std::vector<int> words;
    for (const auto& lab : L.labels) words.push_back(lab.size_in_words());
    auto rep = audit_labels(
        M, pi, [&](int a, int b) { return to_double(exact_query(L.labels[a], L.labels[b])); }, 1.0,
        [](int j) { return static_cast<std::int64_t>(j); }, words, 0.0);
    CHECK(rep.pass());

    auto corrupted = L;
    corrupted.labels[pi.order[19]].payload.resize(3);
    bool threw = false;
    try {
        for (int i = 0; i < 20; ++i)
            for (int j = i + 1; j < 20; ++j) exact_query(corrupted.labels[i], corrupted.labels[j]);
    } catch (const Error& e) {
        threw = e.kind() == "SchemeMismatch";
    }
    CHECK(threw);
}

TEST_CASE("optimized audits agree exactly with serial reference (n <= 24)") {
    Rng rng(6);
    for (int trial = 0; trial < 8; ++trial) {
        int n = 4 + static_cast<int>(rng.next_below(21));
        auto M = random_metric(n, rng);
        auto pi = PriorityOrdering::random(n, rng);
        auto F = meta_embedding(M, pi, preset_beta("exp", 1));
        auto a = audit_distortion(M, F);
        auto b = reference::audit_distortion_serial(M, F);
        REQUIRE(a.expansion == b.expansion);
        REQUIRE(a.contraction == b.contraction);
        REQUIRE(a.zero_distance_pairs == b.zero_distance_pairs);
        // identical worst witnesses, including tie-breaks
        REQUIRE(a.checks[0].witnesses[0].i == b.checks[0].witnesses[0].i);
        REQUIRE(a.checks[0].witnesses[0].j == b.checks[0].witnesses[0].j);
        REQUIRE(a.checks[0].witnesses[1].i == b.checks[0].witnesses[1].i);
        REQUIRE(a.checks[0].witnesses[1].j == b.checks[0].witnesses[1].j);
    }
}

TEST_CASE("witnesses reproduce their reported ratios") {
    Rng rng(7);
    auto M = random_metric(18, rng);
    auto pi = PriorityOrdering::identity(18);
    auto F = meta_embedding(M, pi, preset_beta("doubly-exp"));
    auto rep = audit_distortion(M, F);
    for (const auto& w : rep.checks[0].witnesses) {
        if (w.i < 0) continue;
        Rat emb = F.linf_dist(w.i, w.j);
        Rat d = M.at(w.i, w.j);
        Rat ratio = w.what == "max-expansion" ? emb / d : d / emb;
        CHECK(rat_to_string(ratio) == w.exact);
    }
}
