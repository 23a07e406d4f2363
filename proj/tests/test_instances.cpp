#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "metrembed/instances.hpp"

using namespace metrembed;

TEST_CASE("cycle instance: structure and priorities") {
    auto c2 = cycle_instance(2);
    CHECK(c2.metric.n == 4);
    CHECK(c2.antipodal_pairs == std::vector<std::pair<int, int>>{{0, 2}, {1, 3}});
    CHECK(c2.metric.at(0, 2) == Rat(2));
    CHECK(c2.report.pass());

    auto c8 = cycle_instance(8);
    CHECK(c8.antipodal_pairs.size() == 8);
    for (const auto& [a, b] : c8.antipodal_pairs) CHECK(c8.metric.at(a, b) == Rat(8));
    CHECK(c8.priority.order[0] == 8);
    CHECK(c8.priority.order[1] == 9);
    CHECK(c8.report.pass());

    CHECK_THROWS_WITH_AS(cycle_instance(1), doctest::Contains("BadParameter"), Error);
}

TEST_CASE("cycle optimal embedding: isometric, n columns, one antipodal pair per column") {
    for (int n : {2, 3, 4, 8}) {
        auto inst = cycle_instance(n);
        auto F = cycle_optimal_embedding(n);
        REQUIRE(F.d == n);
        auto rep = audit_distortion(inst.metric, F);
        CHECK(rep.expansion == 1.0);
        CHECK(rep.contraction == 1.0);

        auto tab = coordinate_satisfaction(inst.metric, F);
        CHECK(tab.unsatisfied.empty());
        for (int c = 0; c < n; ++c) {
            int antipodal_here = 0;
            for (const auto& pr : tab.satisfied_by_col[c])
                for (const auto& ap : inst.antipodal_pairs)
                    if (pr == ap) ++antipodal_here;
            CHECK(antipodal_here == 1);
        }
    }
}

TEST_CASE("antipodal basis: distances per norm") {
    auto a1 = antipodal_basis(1, 2.0);
    CHECK(a1.points.n == 2);
    CHECK(a1.metric.at(0, 1) == doctest::Approx(2.0));
    CHECK(a1.report.pass());

    auto a3 = antipodal_basis(3, 2.0);
    CHECK(a3.cross_distance == doctest::Approx(std::sqrt(2.0)));
    CHECK(a3.metric.at(0, 2) == doctest::Approx(std::sqrt(2.0)));
    CHECK(a3.report.pass());

    auto b3 = antipodal_basis(3, 1.0);
    CHECK(b3.cross_distance == doctest::Approx(2.0));
    CHECK(b3.report.pass());

    auto i3 = antipodal_basis(3, std::numeric_limits<double>::infinity());
    CHECK(i3.cross_distance == doctest::Approx(1.0));
    CHECK(i3.metric.at(0, 1) == doctest::Approx(2.0));
    CHECK(i3.report.pass());

    // intermediate norms go through the generic l_p evaluation
    auto p3 = antipodal_basis(2, 3.0);
    CHECK(p3.cross_distance == doctest::Approx(std::pow(2.0, 1.0 / 3)));
    CHECK(p3.report.pass());

    CHECK_THROWS_AS(antipodal_basis(0, 2.0), Error);
}

TEST_CASE("hypercube code: n = 3 exhaustive, symmetry, bounds") {
    auto h3 = hypercube_code(3, Rat(1, 9));
    CHECK(h3.radius == 1);
    CHECK(h3.report.pass());
    REQUIRE(h3.code.size() >= 2);
    // contains an antipodal pair and all pairs differ in >= 2 coordinates
    bool has_antipodal = false;
    for (auto x : h3.code)
        for (auto y : h3.code) has_antipodal |= (x ^ y) == 7u;
    CHECK(has_antipodal);
    for (size_t i = 0; i < h3.code.size(); ++i)
        for (size_t j = i + 1; j < h3.code.size(); ++j)
            CHECK(hamming(h3.code[i], h3.code[j]) >= 2);

    auto h16 = hypercube_code(16, Rat(1, 9));
    CHECK(h16.report.pass());
    // |A| >= 2^16 / (2 C(16,5))
    unsigned long long binom = 1;
    for (int i = 1; i <= 5; ++i) binom = binom * (16 - i + 1) / i;
    CHECK(h16.code.size() * 2 * binom >= (1ull << 16));

    CHECK_THROWS_WITH_AS(hypercube_code(8, Rat(1, 6)), doctest::Contains("BadParameter"), Error);
    CHECK_THROWS_WITH_AS(hypercube_code(25, Rat(1, 9)), doctest::Contains("BadParameter"), Error);
    CHECK_THROWS_WITH_AS(hypercube_code(1, Rat(1, 9)), doctest::Contains("BadParameter"), Error);
}

TEST_CASE("hypercube code: symmetry is exact for every output") {
    Rng rng(31);
    for (int trial = 0; trial < 6; ++trial) {
        int n = 4 + static_cast<int>(rng.next_below(13));
        auto inst = hypercube_code(n, Rat(1, 9));
        std::uint32_t full = (1u << n) - 1;
        std::vector<char> member(1u << n, 0);
        for (auto c : inst.code) member[c] = 1;
        for (auto c : inst.code) REQUIRE(member[full ^ c]);
        // strict separation > eps' * n
        for (size_t i = 0; i < inst.code.size(); ++i)
            for (size_t j = i + 1; j < inst.code.size(); ++j)
                REQUIRE(Rat(hamming(inst.code[i], inst.code[j])) > inst.eps_prime * n);
    }
}

TEST_CASE("padded prefix set: sizes and the triangle chain") {
    auto y3 = padded_prefix_set(3, Rat(1, 3));
    CHECK(y3.prefix == 1);
    CHECK(y3.points.n == 2);
    CHECK(y3.points.at(0, 0) == doctest::Approx(-1.0));
    CHECK(y3.points.at(1, 0) == doctest::Approx(1.0));
    CHECK(y3.points.at(0, 1) == doctest::Approx(0.0));

    auto y6 = padded_prefix_set(6, Rat(1, 3));
    CHECK(y6.prefix == 2);
    CHECK(y6.points.n == 4);

    // chain 2 (1+eps) sqrt(n - m) < sqrt(4 n) at n = 16, eps = 1/9
    int n = 16;
    auto code = hypercube_code(n, Rat(1, 9));
    auto y = padded_prefix_set(n, code.eps_prime);
    double lhs = 2.0 * (1.0 + 1.0 / 9.0) * std::sqrt(static_cast<double>(n - y.prefix));
    double rhs = std::sqrt(4.0 * n);
    CHECK(lhs < rhs);

    // and the exact distances it abbreviates: for x in A and its prefix-match
    // y, ||x - y||_2 = sqrt(n - m)
    auto pts = hypercube_points(code);
    std::uint32_t x = code.code[0];
    std::uint32_t prefix_mask = (1u << y.prefix) - 1;
    int yi = static_cast<int>(x & prefix_mask);
    double sq = 0;
    for (int k = 0; k < n; ++k) {
        double d = pts.at(0, k) - y.points.at(yi, k);
        sq += d * d;
    }
    CHECK(sq == doctest::Approx(static_cast<double>(n - y.prefix)));
}

TEST_CASE("combine code with prefix: Y occupies the first ranks") {
    auto code = hypercube_code(8, Rat(1, 9));
    auto y = padded_prefix_set(8, code.eps_prime);
    auto combo = combine_code_with_prefix(code, y);
    CHECK(combo.y_size == y.points.n);
    CHECK(combo.points.n == y.points.n + static_cast<int>(code.code.size()));
    for (int r = 0; r < combo.y_size; ++r) CHECK(combo.priority.rank[r] == r + 1);
}

TEST_CASE("random bipartite hard instance: verified properties") {
    auto inst = random_bipartite_hard(8, 7);
    CHECK(inst.report.pass());
    CHECK(inst.metric.n == 18);
    // same-side distance exactly 2
    for (int u = 0; u < 8; ++u)
        for (int v = u + 1; v < 8; ++v) {
            REQUIRE(inst.metric.at(u, v) == Rat(2));
            REQUIRE(inst.metric.at(8 + u, 8 + v) == Rat(2));
        }
    // cross distances in {1, 3}
    for (int u = 0; u < 8; ++u)
        for (int v = 0; v < 8; ++v) {
            Rat d = inst.metric.at(u, 8 + v);
            REQUIRE((d == Rat(1) || d == Rat(3)));
        }
    // everyone is next to l or r
    for (int v = 0; v < 16; ++v)
        REQUIRE((inst.metric.at(v, inst.l) == Rat(1) || inst.metric.at(v, inst.r) == Rat(1)));
    CHECK(inst.priority.order[0] == inst.l);
    CHECK(inst.priority.order[1] == inst.r);
    // determinism per seed
    auto again = random_bipartite_hard(8, 7);
    CHECK(again.adj == inst.adj);
}

TEST_CASE("bipartite A1 u A2 embedding: satisfied non-expansively, certifier passes") {
    for (std::uint64_t seed : {7ull, 8ull}) {
        auto inst = random_bipartite_hard(8, seed);
        auto F = bipartite_A12_embedding(inst);
        CHECK(F.d <= 5 * std::log2(8.0 * 4));  // O(log n) columns

        auto rep = audit_distortion(inst.metric, F);
        CHECK(rep.expansion <= 1.0);

        auto tab = coordinate_satisfaction(inst.metric, F);
        // every A1 and A2 pair satisfied by some column
        auto satisfied = [&](const std::pair<int, int>& pr) {
            for (const auto& col : tab.satisfied_by_col)
                for (const auto& q : col)
                    if (q == pr) return true;
            return false;
        };
        for (const auto& pr : inst.A1) REQUIRE(satisfied(pr));
        for (const auto& pr : inst.A2) REQUIRE(satisfied(pr));

        auto cert = bipartite_certify(inst, F, 1.49);
        CHECK(cert.pass());
    }
}

TEST_CASE("bipartite certifier: isometric witness and tampered column") {
    auto inst = random_bipartite_hard(8, 3);
    // Frechet embedding: column v = d(., v); isometric, expansion 1
    const int N = inst.metric.n;
    EmbeddingMatrix<Rat> F(N, N);
    for (int r = 0; r < N; ++r)
        for (int c = 0; c < N; ++c) F.at(r, c) = inst.metric.at(r, c);
    auto cert = bipartite_certify(inst, F, 1.0);
    CHECK(cert.pass());
    // the A3 pairs are all satisfied (isometric), so columns with l != r must exist
    bool found = false;
    for (const auto& [k, v] : cert.stats)
        if (k == "columns_l_neq_r") found = v != "0";
    CHECK(found);

    // A matrix that satisfies an A3 pair inside an l = r column cannot have
    // expansion <= t; the certifier rejects it as not a G' embedding.
    REQUIRE(!inst.A3.empty());
    auto [a, b] = inst.A3[0];
    EmbeddingMatrix<Rat> bad(N, 1);
    bad.at(a, 0) = Rat(3);  // l and r stay 0: pair (a,b) realized at 3
    CHECK_THROWS_WITH_AS(bipartite_certify(inst, bad, 1.49),
                         doctest::Contains("NotAnEmbeddingOfGPrime"), Error);

    CHECK_THROWS_WITH_AS(bipartite_certify(inst, F, 1.5), doctest::Contains("BadParameter"), Error);
    EmbeddingMatrix<Rat> wrong(3, 1);
    CHECK_THROWS_WITH_AS(bipartite_certify(inst, wrong, 1.4),
                         doctest::Contains("NotAnEmbeddingOfGPrime"), Error);
}
