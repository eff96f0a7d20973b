#include <doctest.h>

#include <sstream>

#include "qchain/graph.hpp"
#include "qchain/ringlin.hpp"
#include "qchain/rng.hpp"

#include "oracles.hpp"

using namespace qchain;

namespace {

SparseMat random_sparse(int rows, int cols, i64 q, Rng& rng, double density = 0.35) {
    std::vector<SparseMat::Entry> ents;
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c)
            if (rng.unit() < density) {
                i64 v = 1 + (i64)rng.below(q - 1);
                ents.push_back({r, c, v});
            }
    return SparseMat(rows, cols, q, std::move(ents));
}

std::vector<i64> mat_vec_mod(const SparseMat& m, const std::vector<i64>& x, i64 p) {
    std::vector<i64> y(m.rows(), 0);
    for (const auto& e : m.entries()) y[e.row] = mod_reduce(y[e.row] + e.val * x[e.col], p);
    return y;
}

}  // namespace

TEST_CASE("rank_mod_p on the spec instances") {
    CHECK(rank_mod_p(SparseMat::zero(3, 3, 2), 2) == 0);
    CHECK(rank_mod_p(SparseMat::identity(4, 3), 3) == 4);

    // boundary of the 4-cycle: rank = V - #components = 3 (frozen, and
    // re-derived by the dense elimination oracle)
    Graph c4 = named_graph("cycle(4)");
    SparseMat d1 = c4.incidence(2);
    CHECK(oracle::rank_mod_p(oracle::densify(d1), 2) == 3);
    CHECK(rank_mod_p(d1, 2) == 3);

    CHECK_THROWS_AS(rank_mod_p(d1, 4), std::invalid_argument);
    CHECK_THROWS_AS(rank_mod_p(d1, 1), std::invalid_argument);
}

TEST_CASE("kernel basis on the spec instances") {
    CHECK(kernel_basis_mod_p(SparseMat::identity(3, 2), 2).empty());

    Graph c4 = named_graph("cycle(4)");
    auto basis = kernel_basis_mod_p(c4.incidence(2), 2);
    REQUIRE(basis.size() == 1);
    CHECK(basis[0] == std::vector<i64>{1, 1, 1, 1});  // all-ones edge vector

    SparseMat m(1, 2, 2, {{0, 0, 1}, {0, 1, 1}});
    auto b2 = kernel_basis_mod_p(m, 2);
    REQUIRE(b2.size() == 1);
    CHECK(b2[0] == std::vector<i64>{1, 1});
}

TEST_CASE("solve_mod_p: identity, tie-break, inconsistent") {
    SparseMat id = SparseMat::identity(3, 5);
    auto x = solve_mod_p(id, {2, 0, 4}, 5);
    REQUIRE(x.has_value());
    CHECK(*x == std::vector<i64>{2, 0, 4});

    // [1 1] x = [1] over F_2: both (1,0) and (0,1) solve; the promised
    // tie-break is the lexicographically smallest solution (0,1)
    SparseMat m(1, 2, 2, {{0, 0, 1}, {0, 1, 1}});
    auto y = solve_mod_p(m, {1}, 2);
    REQUIRE(y.has_value());
    CHECK(*y == std::vector<i64>{0, 1});

    // rhs outside the column space of the C4 incidence transpose
    Graph c4 = named_graph("cycle(4)");
    SparseMat dt = c4.incidence(2).transpose();
    // rows of dt span even-weight vectors; an odd-weight rhs is outside
    auto z = solve_mod_p(dt, {1, 0, 0, 0}, 2);
    CHECK(!z.has_value());

    CHECK_THROWS_AS(solve_mod_p(m, {1, 0}, 2), std::invalid_argument);
}

TEST_CASE("smith normal form: spec instances") {
    CHECK(smith_normal_form(SparseMat::identity(2, 5)) == std::vector<i64>{1, 1});
    CHECK(smith_normal_form(SparseMat(1, 1, 5, {{0, 0, 2}})) == std::vector<i64>{2});

    // signed C4 incidence: entries +-1 via the balanced lift over q = 3
    Graph c4 = named_graph("cycle(4)");
    std::vector<SparseMat::Entry> ents;
    for (int e = 0; e < 4; ++e) {
        auto [u, v] = c4.edge(e);
        ents.push_back({u, e, 1});
        ents.push_back({v, e, 2});  // lifts to -1 under Lift::Balanced
    }
    SparseMat signed_inc(4, 4, 3, std::move(ents));
    auto factors = smith_normal_form(signed_inc, Lift::Balanced);
    CHECK(factors == std::vector<i64>{1, 1, 1});

    // independent minor-gcd oracle agrees
    auto dense = oracle::densify(signed_inc);
    for (auto& row : dense)
        for (auto& v : row)
            if (v == 2) v = -1;
    auto expect = oracle::snf_via_minors(dense);
    CHECK(std::vector<long long>(factors.begin(), factors.end()) == expect);
}

TEST_CASE("rank + kernel = cols for random matrices and primes up to 13") {
    Rng rng(7);
    for (i64 p : {2, 3, 5, 7, 11, 13}) {
        for (int trial = 0; trial < 6; ++trial) {
            SparseMat m = random_sparse(3 + (int)rng.below(8), 3 + (int)rng.below(8), p, rng);
            int r = rank_mod_p(m, p);
            auto k = kernel_basis_mod_p(m, p);
            CHECK(r + (int)k.size() == m.cols());
            for (const auto& v : k)
                for (i64 c : mat_vec_mod(m, v, p)) CHECK(c == 0);
        }
    }
}

TEST_CASE("all four operations agree with the dense oracle on random 12x12") {
    Rng rng(99);
    for (int trial = 0; trial < 40; ++trial) {
        i64 p = std::vector<i64>{2, 3, 5}[trial % 3];
        int rows = 2 + (int)rng.below(11), cols = 2 + (int)rng.below(11);
        SparseMat m = random_sparse(rows, cols, p, rng);
        auto dense = oracle::densify(m);

        CHECK(rank_mod_p(m, p) == oracle::rank_mod_p(dense, p));
        CHECK(kernel_basis_mod_p(m, p).size() == oracle::nullspace_mod_p(dense, p).size());

        std::vector<i64> x(cols);
        for (auto& v : x) v = (i64)rng.below(p);
        std::vector<i64> b = mat_vec_mod(m, x, p);
        auto sol = solve_mod_p(m, b, p);
        REQUIRE(sol.has_value());
        CHECK(mat_vec_mod(m, *sol, p) == b);
    }
}

TEST_CASE("rank_mod_p vs SNF invariant factors") {
    Rng rng(1234);
    for (int trial = 0; trial < 20; ++trial) {
        int n = 2 + (int)rng.below(4);
        SparseMat m = random_sparse(n, n, 7, rng, 0.5);
        auto factors = smith_normal_form(m);
        int nonzero = (int)factors.size();
        for (i64 p : {2, 3, 5, 7, 11, 13}) {
            int divisible = 0;
            for (i64 d : factors)
                if (d % p == 0) ++divisible;
            CHECK(rank_mod_p(m.reduced(p), p) == nonzero - divisible);
        }
        // minor-gcd oracle ground truth
        auto expect = oracle::snf_via_minors(oracle::densify(m));
        CHECK(std::vector<long long>(factors.begin(), factors.end()) == expect);
    }
}

TEST_CASE("rational rank via multi-prime + SNF cross-check") {
    // unsigned incidence: rank V over Q for a connected non-bipartite graph
    // (odd cycles break the parity relation), V - 1 for a bipartite one
    Graph pet = named_graph("petersen");
    CHECK(rational_rank(pet.incidence(2)) == 10);
    Graph c4 = named_graph("cycle(4)");
    CHECK(rational_rank(c4.incidence(2)) == 3);
}

TEST_CASE("matrix text format round-trip") {
    Rng rng(5);
    SparseMat m = random_sparse(6, 9, 4, rng);
    std::stringstream ss;
    m.write_text(ss);
    SparseMat back = SparseMat::read_text(ss);
    CHECK(back == m);
}
