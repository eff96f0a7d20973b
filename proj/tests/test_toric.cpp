#include <doctest.h>

#include "qchain/toric.hpp"
#include "qchain/ringlin.hpp"
#include "qchain/rng.hpp"

using namespace qchain;

namespace {

ChainComplex torus3() {
    return power(graph_complex(named_graph("cycle(3)"), 2), 2);
}

PauliOp product_of_vertex_ops(const ChainComplex& c, const std::vector<int>& verts) {
    PauliOp acc = PauliOp::identity(c.modulus(), c.dim(1));
    for (int s : verts) acc = acc * vertex_operator(c, s);
    return acc;
}

}  // namespace

TEST_CASE("vertex and plaquette operators") {
    ChainComplex t = torus3();
    for (int s = 0; s < t.dim(0); ++s) CHECK(vertex_operator(t, s).weight() == 4);
    for (int p = 0; p < t.dim(2); ++p) CHECK(plaquette_operator(t, p).weight() == 4);

    // [A_s, B_p] = 0 for all s, p
    for (int s = 0; s < t.dim(0); ++s)
        for (int p = 0; p < t.dim(2); ++p)
            CHECK(vertex_operator(t, s).commutes_with(plaquette_operator(t, p)));

    // product of all 9 plaquette operators = identity (b2 = 1 redundancy)
    PauliOp prod = PauliOp::identity(2, t.dim(1));
    for (int p = 0; p < t.dim(2); ++p) prod = prod * plaquette_operator(t, p);
    CHECK(prod.is_identity());

    // d-regular square: vertex operators have weight 2d
    ChainComplex pet2 = power(graph_complex(named_graph("petersen"), 2), 2);
    CHECK(vertex_operator(pet2, 0).weight() == 6);

    // isolated vertex: identity operator
    Graph lonely(3, {{0, 1}});
    ChainComplex lc = graph_complex(lonely, 2);
    CHECK(vertex_operator(lc, 2).is_identity());
}

TEST_CASE("defect operators on the petersen square") {
    ChainComplex pet2 = power(graph_complex(named_graph("petersen"), 2), 2);
    const int g = 5, m = g / 2;

    Rng rng(42);
    for (int trial = 0; trial < 8; ++trial) {
        int p = (int)rng.below(pet2.dim(2));
        DefectOps ops = defect_ops(pet2, p);

        // closed ball sizes: 1 + (d-1) + (d-1)^2 vertices
        CHECK((int)ops.r_set.size() == 7);
        CHECK((int)ops.t_set.size() == 7);
        CHECK(ops.d_op.weight() == 7);

        // C * D equals the product of A_s over the recorded set exactly
        PauliOp cd = ops.c_op * ops.d_op;
        CHECK(cd == product_of_vertex_ops(pet2, ops.a_product_vertices));

        // identical (anti)commutation pattern with every plaquette
        PauliOp bp = plaquette_operator(pet2, p);
        CHECK(!ops.c_op.commutes_with(bp));
        CHECK(!ops.d_op.commutes_with(bp));
        // the far defects sit at radius floor(g/2) from the anchor 1-cell
        // (a, i); measured from p itself the girth cycles through b wrap
        // some of them to within distance 1
        int anti = 0;
        for (int pp = 0; pp < pet2.dim(2); ++pp) {
            PauliOp b = plaquette_operator(pet2, pp);
            bool cc = ops.c_op.commutes_with(b), dc = ops.d_op.commutes_with(b);
            CHECK(cc == dc);
            if (!cc) {
                ++anti;
                if (pp != p)
                    CHECK(cell_distance(pet2, pet2.labels(2)[pp], ops.cell_a_i) >= m);
            }
        }
        CHECK(anti >= 2);  // p itself plus the far ring

        // supports stay within distance m+1 of p
        const CellLabel& plab = pet2.labels(2)[p];
        for (int cell : ops.d_op.support())
            CHECK(cell_distance(pet2, pet2.labels(1)[cell], plab) <= m + 1);
        for (int cell : ops.c_op.support())
            CHECK(cell_distance(pet2, pet2.labels(1)[cell], plab) <= m + 1);
    }

    // girth guard: triangles are too tight to separate supports
    ChainComplex k4sq = power(graph_complex(named_graph("k4"), 2), 2);
    CHECK_NOTHROW(defect_ops(k4sq, 0));  // floor(3/2) = 1 is still allowed
    ChainComplex t3 = torus3();
    CHECK_NOTHROW(defect_ops(t3, 0));
}

TEST_CASE("defect anticommutation set matches the ball boundary") {
    ChainComplex pet2 = power(graph_complex(named_graph("petersen"), 2), 2);
    DefectOps ops = defect_ops(pet2, 5);
    // anticommuting plaquettes of D are exactly a x f' for f' in the edge
    // boundary of R
    std::set<int> expect;
    for (int f : ops.dr_edges) {
        int idx = pet2.cell_index(2, {{1, ops.edge_a}, {1, f}});
        REQUIRE(idx >= 0);
        expect.insert(idx);
    }
    std::set<int> got;
    for (int pp = 0; pp < pet2.dim(2); ++pp)
        if (!ops.d_op.commutes_with(plaquette_operator(pet2, pp))) got.insert(pp);
    CHECK(got == expect);
    CHECK(got.count(5) == 1);
}

TEST_CASE("wilson loops and wilson vectors") {
    ChainComplex t = torus3();
    const Graph& c3 = t.factors()[1];

    auto basis = cycle_basis(c3);
    REQUIRE(basis.size() == 1);  // b1(C3) = 1

    // v x c is a 1-cycle of the product; its wilson loop is Z-type
    auto chain = vertical_cycle_chain(t, 0, basis[0]);
    PauliOp w = wilson_loop(t, chain);
    CHECK(w.weight() == 3);
    for (int i = 0; i < t.dim(1); ++i) CHECK(w.x_at(i) == 0);

    // non-cycles are rejected
    std::vector<i64> not_cycle(t.dim(1), 0);
    not_cycle[0] = 1;
    CHECK_THROWS_AS(wilson_loop(t, not_cycle), std::invalid_argument);

    // zero chain: all +1 wilson vector
    BitVec zero(t.dim(1));
    for (int v = 0; v < 3; ++v) {
        auto s = wilson_vector(t, zero, v, basis);
        for (int e : s) CHECK(e == +1);
    }

    // flipping one cell (v, e) with e on the basis cycle flips that entry
    int e_on_cycle = -1;
    for (int e = 0; e < c3.edge_count(); ++e)
        if (basis[0].get(e)) { e_on_cycle = e; break; }
    REQUIRE(e_on_cycle >= 0);
    BitVec x(t.dim(1));
    x.set(t.cell_index(1, {{0, 1}, {1, e_on_cycle}}), true);
    auto s1 = wilson_vector(t, x, 1, basis);
    CHECK(s1[0] == -1);
    auto s0 = wilson_vector(t, x, 0, basis);
    CHECK(s0[0] == +1);  // other rows unaffected
}

TEST_CASE("wilson vectors are blind to cut-space additions") {
    ChainComplex pet2 = power(graph_complex(named_graph("petersen"), 2), 2);
    const Graph& g = pet2.factors()[1];
    auto basis = cycle_basis(g);
    REQUIRE(basis.size() == 6);

    Rng rng(8);
    BitVec x(pet2.dim(1));
    for (int t = 0; t < 5; ++t) x.flip((int)rng.below(pet2.dim(1)));
    const int v = 3;
    auto before = wilson_vector(pet2, x, v, basis);

    // add the row-v coboundary of a vertex set: cells (v, e) for e in a cut
    for (int trial = 0; trial < 5; ++trial) {
        BitVec cut(g.edge_count());
        for (int u = 0; u < g.vertex_count(); ++u)
            if (rng.next() & 1)
                for (int e : g.incident_edges(u)) cut.flip(e);
        BitVec shifted = x;
        for (int e = 0; e < g.edge_count(); ++e)
            if (cut.get(e)) shifted.flip(pet2.cell_index(1, {{0, v}, {1, e}}));
        CHECK(wilson_vector(pet2, shifted, v, basis) == before);
    }
}

TEST_CASE("wilson distance") {
    Graph c5 = named_graph("cycle(5)");
    auto basis5 = cycle_basis(c5);
    REQUIRE(basis5.size() == 1);
    CHECK(wilson_distance({+1}, {+1}, c5) == 0);
    CHECK(wilson_distance({+1}, {-1}, c5) == 1);  // any single edge flips the cycle

    Graph pet = named_graph("petersen");
    auto basis = cycle_basis(pet);
    std::vector<int> s(basis.size(), +1), s2(basis.size(), +1);
    s2[2] = -1;
    CHECK(wilson_distance(s, s, pet) == 0);
    int d = wilson_distance(s, s2, pet);
    CHECK(d >= 1);

    // independent oracle: min weight u with pairing pattern s * s2
    {
        int best = 99;
        for (std::uint32_t u = 0; u < (1u << pet.edge_count()); ++u) {
            bool ok = true;
            for (std::size_t c = 0; c < basis.size(); ++c) {
                int parity = 0;
                for (int e = 0; e < pet.edge_count(); ++e)
                    if ((u >> e & 1) && basis[c].get(e)) parity ^= 1;
                bool want = s[c] != s2[c];
                if ((parity == 1) != want) { ok = false; break; }
            }
            if (ok) best = std::min(best, std::popcount(u));
        }
        CHECK(d == best);
    }
}

TEST_CASE("coboundary inverse ratio: exact mode and oracle") {
    ChainComplex t = torus3();

    // a single 1-cell: coboundary weight 2, best residual weight 1 (y = 0)
    BitVec x(t.dim(1));
    x.set(0, true);
    RatioReport rep = coboundary_inverse_ratio(t, x, RatioMode::Exact);
    CHECK(rep.coboundary_weight == 2);
    CHECK(rep.min_residual_weight == 1);
    CHECK(rep.ratio == doctest::Approx(2.0));
    CHECK(!rep.infinite);

    // a cocycle gives the sentinel
    auto kernel = kernel_basis_mod_p(t.boundary(2).transpose(), 2);
    REQUIRE(kernel.size() == 10);  // 18 - rank 8
    BitVec coc(t.dim(1));
    for (int e = 0; e < t.dim(1); ++e)
        if (kernel[0][e] % 2) coc.set(e, true);
    RatioReport rep2 = coboundary_inverse_ratio(t, coc, RatioMode::Exact);
    CHECK(rep2.infinite);
    CHECK(rep2.min_residual_weight == 0);
    CHECK(rep2.coboundary_weight == 0);

    // full independent enumeration over all 2^18 chains y with delta y = 0
    Rng rng(17);
    for (int trial = 0; trial < 4; ++trial) {
        BitVec xr(t.dim(1));
        for (int k = 0; k < 6; ++k) xr.flip((int)rng.below(t.dim(1)));
        RatioReport got = coboundary_inverse_ratio(t, xr, RatioMode::Exact);

        SparseMat delta = t.boundary(2).transpose();
        int best = t.dim(1) + 1;
        for (std::uint64_t y = 0; y < (1ull << t.dim(1)); ++y) {
            std::vector<i64> yv(t.dim(1));
            for (int e = 0; e < t.dim(1); ++e) yv[e] = (y >> e) & 1;
            bool cocycle = true;
            for (i64 v : delta.apply(yv))
                if (v % 2) { cocycle = false; break; }
            if (!cocycle) continue;
            int w = 0;
            for (int e = 0; e < t.dim(1); ++e)
                if (((y >> e) & 1) != (std::uint64_t)xr.get(e)) ++w;
            best = std::min(best, w);
        }
        CHECK(got.min_residual_weight == best);

        // the witness really is a cocycle achieving the reported weight
        std::vector<i64> wy(t.dim(1));
        for (int e = 0; e < t.dim(1); ++e) wy[e] = got.witness_y.get(e);
        for (i64 v : delta.apply(wy)) CHECK(v % 2 == 0);
        BitVec diff = xr;
        diff ^= got.witness_y;
        CHECK(diff.popcount() == got.min_residual_weight);
    }

    // anneal mode never beats the exact optimum
    BitVec xa(t.dim(1));
    for (int k : {1, 4, 7, 11}) xa.set(k, true);
    RatioReport ex = coboundary_inverse_ratio(t, xa, RatioMode::Exact);
    RatioReport an = coboundary_inverse_ratio(t, xa, RatioMode::Anneal, 3);
    CHECK(!an.exact);
    CHECK(an.min_residual_weight >= ex.min_residual_weight);
}
