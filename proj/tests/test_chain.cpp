#include <doctest.h>

#include <nlohmann/json.hpp>

#include "qchain/chain_complex.hpp"
#include "qchain/ringlin.hpp"
#include "qchain/rng.hpp"

#include "oracles.hpp"

using namespace qchain;

namespace {

std::vector<int> betti_via_dense_oracle(const ChainComplex& c, i64 p) {
    std::vector<int> ranks(c.max_degree() + 2, 0);
    for (int i = 1; i <= c.max_degree(); ++i)
        ranks[i] = oracle::rank_mod_p(oracle::densify(c.boundary(i).reduced(p)), p);
    std::vector<int> b(c.max_degree() + 1);
    for (int i = 0; i <= c.max_degree(); ++i) b[i] = c.dim(i) - ranks[i] - ranks[i + 1];
    return b;
}

}  // namespace

TEST_CASE("graph complexes and the b1 formula") {
    ChainComplex c4 = graph_complex(named_graph("cycle(4)"), 2);
    CHECK(c4.dims() == std::vector<int>{4, 4});
    CHECK(rank_mod_p(c4.boundary(1), 2) == 3);
    CHECK(betti(c4, 2) == std::vector<int>{1, 1});
    CHECK(betti_via_dense_oracle(c4, 2) == std::vector<int>{1, 1});

    // b1(G) = (d-2)/2 N + 1 for connected d-regular G
    ChainComplex k4 = graph_complex(named_graph("k4"), 2);
    CHECK(betti(k4, 2) == std::vector<int>{1, 3});

    ChainComplex pet = graph_complex(named_graph("petersen"), 2);
    CHECK(betti(pet, 2) == std::vector<int>{1, 6});
    // cross-check: b1 = E - V + 1 for connected graphs
    CHECK(6 == pet.dim(1) - pet.dim(0) + 1);
}

TEST_CASE("hypergraph complexes") {
    ChainComplex k22 = hypergraph_complex(named_graph("complete_bipartite(2,2)"), 2);
    CHECK(k22.dims() == std::vector<int>{2, 2});
    CHECK(rank_mod_p(k22.boundary(1), 2) == 1);
    CHECK(betti(k22, 2) == std::vector<int>{1, 1});

    // one hyperedge containing three hypervertices
    Graph star(4, {{0, 1}, {0, 2}, {0, 3}}, 1);
    ChainComplex c = hypergraph_complex(star, 2);
    CHECK(betti(c, 2) == std::vector<int>{2, 0});

    // empty hypergraph: boundary is the zero map, b1 = D1
    Graph empty(5, {}, 2);
    ChainComplex e = hypergraph_complex(empty, 2);
    CHECK(betti(e, 2) == std::vector<int>{3, 2});

    CHECK_THROWS_AS(hypergraph_complex(named_graph("k4"), 2), std::invalid_argument);
}

TEST_CASE("tensor products: torus, k4 squared, unit") {
    ChainComplex torus = power(graph_complex(named_graph("cycle(3)"), 2), 2);
    CHECK(torus.dims() == std::vector<int>{9, 18, 9});
    CHECK(betti(torus, 2) == std::vector<int>{1, 2, 1});
    CHECK(betti_via_dense_oracle(torus, 2) == std::vector<int>{1, 2, 1});

    ChainComplex k4sq = power(graph_complex(named_graph("k4"), 2), 2);
    CHECK(betti(k4sq, 2) == std::vector<int>{1, 6, 9});  // b2 = b1^2 = 9

    ChainComplex pet = graph_complex(named_graph("petersen"), 2);
    ChainComplex unit = tensor_product(pet, point_complex(2));
    CHECK(unit.dims() == pet.dims());
    CHECK(betti(unit, 2) == betti(pet, 2));
}

TEST_CASE("powers: b_k = b1^k, identity power, signed q=3 torus") {
    ChainComplex k4cube = power(graph_complex(named_graph("k4"), 2), 3);
    auto b = betti(k4cube, 2);
    CHECK(b[3] == 27);

    ChainComplex pet = graph_complex(named_graph("petersen"), 2);
    ChainComplex p1 = power(pet, 1);
    CHECK(p1.dims() == pet.dims());
    CHECK(p1.labels(1) == pet.labels(1));
    CHECK_THROWS_AS(power(pet, 0), std::invalid_argument);

    // over q = 3 the oriented complex recovers torus homology
    ChainComplex t3 = power(graph_complex_signed(named_graph("cycle(3)"), 3), 2);
    CHECK(betti(t3, 3) == std::vector<int>{1, 2, 1});
    CHECK(betti_via_dense_oracle(t3, 3) == std::vector<int>{1, 2, 1});
}

TEST_CASE("boundary-of-boundary vanishes for powers and q in {2,3,4,6}") {
    for (i64 q : {2, 3, 4, 6}) {
        ChainComplex base = graph_complex(named_graph("k4"), q);
        ChainComplex cube = power(base, 3);  // constructor verifies dd = 0
        CHECK(cube.max_degree() == 3);
        for (int i = 1; i < cube.max_degree(); ++i)
            CHECK((cube.boundary(i) * cube.boundary(i + 1)).is_zero());
    }
}

TEST_CASE("Kunneth formula over F2 and F3 on pairwise products") {
    auto convolution = [](const std::vector<int>& a, const std::vector<int>& b) {
        std::vector<int> out(a.size() + b.size() - 1, 0);
        for (std::size_t i = 0; i < a.size(); ++i)
            for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
        return out;
    };
    for (i64 p : {2, 3}) {
        std::vector<ChainComplex> pieces;
        pieces.push_back(graph_complex(named_graph("k4"), p));
        pieces.push_back(graph_complex(named_graph("petersen"), p));
        pieces.push_back(graph_complex_signed(named_graph("cycle(4)"), p));
        for (const auto& a : pieces)
            for (const auto& b : pieces) {
                ChainComplex prod = tensor_product(a, b);
                CHECK(betti(prod, p) == convolution(betti(a, p), betti(b, p)));
            }
    }
}

TEST_CASE("product associativity up to relabeling") {
    ChainComplex a = graph_complex(named_graph("k4"), 2);
    ChainComplex b = graph_complex(named_graph("cycle(3)"), 2);
    ChainComplex c = graph_complex(named_graph("cycle(4)"), 2);
    ChainComplex left = tensor_product(tensor_product(a, b), c);
    ChainComplex right = tensor_product(a, tensor_product(b, c));
    CHECK(left.dims() == right.dims());
    CHECK(betti(left, 2) == betti(right, 2));
}

TEST_CASE("closed deletion") {
    ChainComplex tri = graph_complex(named_graph("cycle(3)"), 2);
    ChainComplex path = delete_cells(tri, {{{0, 0}}});
    CHECK(path.dims() == std::vector<int>{2, 1});
    CHECK(betti(path, 2) == std::vector<int>{1, 0});

    ChainComplex k4sq = power(graph_complex(named_graph("k4"), 2), 2);
    CellLabel corner = {{0, 1}, {0, 2}};
    ChainComplex del = delete_cells(k4sq, {corner});
    CHECK(del.dim(0) == k4sq.dim(0) - 1);
    CHECK(del.dim(1) == k4sq.dim(1) - 6);   // 2d incident 1-cells
    CHECK(del.dim(2) == k4sq.dim(2) - 9);   // d^2 incident squares

    // deleting nothing is the identity; deletion is idempotent in S
    ChainComplex same = delete_cells(k4sq, {});
    CHECK(same.dims() == k4sq.dims());
    ChainComplex twice = delete_cells(del, {});
    CHECK(twice.dims() == del.dims());

    CHECK_THROWS_AS(delete_cells(tri, {{{0, 9}}}), std::invalid_argument);
}

TEST_CASE("deleting an eps-fraction of 0-cells removes at most d^2 eps N^2 2-cells") {
    ChainComplex k4sq = power(graph_complex(named_graph("k4"), 2), 2);
    Rng rng(21);
    for (int trial = 0; trial < 10; ++trial) {
        int t = 1 + (int)rng.below(6);
        std::set<CellLabel> cells;
        while ((int)cells.size() < t)
            cells.insert(k4sq.labels(0)[rng.below(k4sq.dim(0))]);
        ChainComplex del = delete_cells(k4sq, cells);
        CHECK(k4sq.dim(2) - del.dim(2) <= 9 * t);
    }
}

TEST_CASE("Mayer-Vietoris step bound for bare 2-cell deletions") {
    ChainComplex torus = power(graph_complex(named_graph("cycle(3)"), 2), 2);
    auto rep = deletion_b2_bound_check(torus, {torus.labels(2)[0]});
    CHECK(rep.b2_before == 1);
    CHECK(rep.b2_after == 0);
    CHECK(rep.holds);

    auto rep0 = deletion_b2_bound_check(torus, {});
    CHECK(rep0.b2_before == rep0.b2_after);
    CHECK(rep0.holds);

    ChainComplex k4sq = power(graph_complex(named_graph("k4"), 2), 2);
    Rng rng(3);
    std::vector<CellLabel> five;
    std::set<int> chosen;
    while (five.size() < 5) {
        int idx = (int)rng.below(k4sq.dim(2));
        if (chosen.insert(idx).second) five.push_back(k4sq.labels(2)[idx]);
    }
    auto rep5 = deletion_b2_bound_check(k4sq, five);
    CHECK(rep5.holds);
    CHECK(rep5.b2_after >= rep5.b2_before - 5);
    CHECK(rep5.b2_after >= 4);

    CHECK_THROWS_AS(deletion_b2_bound_check(graph_complex(named_graph("k4"), 2), {}),
                    std::invalid_argument);
}

TEST_CASE("cell distance under the product metric") {
    // heawood has diameter 3, so factor distances up to 3 are realized
    ChainComplex pet2 = power(graph_complex(named_graph("heawood"), 2), 2);
    const Graph& g = pet2.factors()[0];

    CellLabel cell = {{1, 0}, {0, 3}};
    CHECK(cell_distance(pet2, cell, cell) == 0);

    // two 1-cells (e, i), (f, i) with e, f sharing a vertex: distance 1
    int e = 0;
    auto [u, v] = g.edge(e);
    (void)v;
    int f = -1;
    for (int cand : g.incident_edges(u))
        if (cand != e) { f = cand; break; }
    REQUIRE(f >= 0);
    CHECK(cell_distance(pet2, {{1, e}, {0, 3}}, {{1, f}, {0, 3}}) == 1);

    // (e, i) vs (e, j) at factor distance 3
    auto dist = g.bfs_distances(0);
    int far = -1;
    for (int w = 0; w < g.vertex_count(); ++w)
        if (dist[w] == 3) { far = w; break; }
    REQUIRE(far >= 0);
    CHECK(cell_distance(pet2, {{1, e}, {0, 0}}, {{1, e}, {0, far}}) == 3);

    ChainComplex hyper = hypergraph_complex(named_graph("complete_bipartite(2,2)"), 2);
    CHECK_THROWS_AS(cell_distance(hyper, {{0, 0}}, {{0, 1}}), std::invalid_argument);
}

TEST_CASE("rational Betti numbers bound the mod-p ones from below") {
    Rng rng(11);
    int checked = 0;
    for (int trial = 0; trial < 50; ++trial) {
        Graph g = random_regular(6 + 2 * (int)rng.below(3), 3, 3, 1000 + trial);
        ChainComplex c = power(graph_complex_signed(g, 30), 2);
        auto bq = betti_rational(c);
        for (i64 p : {2, 3, 5}) {
            auto bp = betti(c, p);
            for (std::size_t i = 0; i < bp.size(); ++i) CHECK(bp[i] >= bq[i]);
        }
        ++checked;
    }
    CHECK(checked == 50);
}

TEST_CASE("complex JSON round-trips bit-exactly") {
    ChainComplex torus = power(graph_complex(named_graph("cycle(3)"), 2), 2);
    auto j = torus.to_json();
    std::string dump = j.dump();
    ChainComplex back = ChainComplex::from_json(nlohmann::json::parse(dump));
    CHECK(back.to_json().dump() == dump);
    CHECK(back.dims() == torus.dims());
    CHECK(back.has_factors());
    CHECK(cell_distance(back, back.labels(0)[0], back.labels(0)[4]) ==
          cell_distance(torus, torus.labels(0)[0], torus.labels(0)[4]));
}

TEST_CASE("label strings parse back") {
    CellLabel lab = {{1, 3}, {0, 7}};
    CHECK(label_from_string(label_to_string(lab)) == lab);
}
