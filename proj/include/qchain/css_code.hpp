#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <vector>

#include "qchain/bitvec.hpp"
#include "qchain/chain_complex.hpp"

namespace qchain {

/**
 * CSS-type Z_q stabilizer code extracted from a chain complex at degree
 * q_deg: one qudit per degree-q_deg cell, X checks from the rows of
 * boundary(q_deg), Z checks from the columns of boundary(q_deg+1).
 * H_X * H_Z^T = 0 mod q is exactly the chain condition.
 */
struct CssCode {
    i64 q = 2;
    int q_deg = 1;
    int n = 0;
    SparseMat h_x;  // D_{q_deg-1} x n
    SparseMat h_z;  // D_{q_deg+1} x n
    std::shared_ptr<const ChainComplex> source;
};

CssCode extract_code(const ChainComplex& c, int q_deg);
CssCode extract_code(std::shared_ptr<const ChainComplex> c, int q_deg);

struct CodeParams {
    int n = 0;
    std::optional<int> k;  // unavailable for composite q
    int rank_x = 0, rank_z = 0;
    int redundancy_x = 0, redundancy_z = 0;
};

/// n, k = n - rank H_X - rank H_Z (prime q), and per-side redundancies
/// (rows minus rank).  For composite q the ranks come from Smith normal
/// form (rows with an invariant factor coprime to q) and k is not defined.
CodeParams code_params(const CssCode& code);

enum class CodeSide { X, Z };

/// Exact minimum weight of a side logical: min Hamming weight over kernel
/// vectors of the opposing check matrix that lie outside the row space of
/// the same-side checks.  q = 2 only; refuses when the kernel has more
/// than `budget` vectors to enumerate.
int distance_brute(const CssCode& code, CodeSide side, std::uint64_t budget = 1ull << 26);

struct SyndromeReport {
    int n_p = 0;               // number of plaquette (Z) checks
    int b2 = 0;                // rank deficiency of H_Z = N_p - rank
    int achievable_exponent = 0;  // rank H_Z; achievable count = 2^this
    std::optional<std::uint64_t> achievable_count;  // when it fits in 64 bits
    std::optional<BitVec> gap_witness;  // v_P over plaquettes
    int gap_distance = 0;      // min Hamming distance from v_P to the image
    i64 min_eigenvalue = 0;    // -N_p + 2*gap_distance
    bool exact = true;         // false for search-mode lower bounds
};

/// Counting part of the syndrome argument: the achievable plaquette
/// syndromes form the image of H_Z, of size 2^{N_p - b2}.  Requires q = 2
/// and C_{q_deg+2} = 0 in the source complex.
SyndromeReport syndrome_census(const CssCode& code);

enum class GapMode { Exact, Search };

/// Covering-radius witness of the achievable-syndrome code: v_P maximizing
/// the distance to the image of H_Z (exact mode), or a seeded-search lower
/// bound (search mode, flagged in the report).
SyndromeReport syndrome_gap(const CssCode& code, GapMode mode, std::uint64_t seed = 0);

struct EntropyBound {
    double h_half_eps = 0;  // H(eps/2)
    double lhs = 0;         // N_p * H(eps/2)
    double rhs = 0;         // b2 * ln 2
    bool holds = false;     // lhs < rhs
};

/// The sphere-counting inequality exp(N_p H(eps/2)) < 2^{b2}, evaluated in
/// extended precision, reported as its logarithm on both sides.
EntropyBound entropy_bound(int n_p, int b2, double eps);

/// alist interchange for check matrices (binary for q = 2; for q > 2 each
/// index is followed by its entry value).
void write_alist_matrix(std::ostream& os, const SparseMat& m);

}  // namespace qchain
