#pragma once

#include <optional>
#include <vector>

#include "qchain/sparse_mat.hpp"

namespace qchain {

/**
 * Exact elimination over F_p and Z.
 *
 * All routines are deterministic: pivots are chosen Markowitz-style
 * (minimum fill estimate (r_i-1)*(c_j-1)) with lexicographic (row, col)
 * tie-break.  No floating point is involved anywhere.
 */

/// F_p-rank of M (entries reduced mod p first).  p must be prime.
int rank_mod_p(const SparseMat& m, i64 p);

/// Basis of ker(M) over F_p, one vector per free column, ordered by free
/// column index.  Vectors have length cols(M) with entries in {0, .., p-1}.
std::vector<std::vector<i64>> kernel_basis_mod_p(const SparseMat& m, i64 p);

/// A solution x of M x = b (mod p), or nullopt when none exists.  The
/// returned solution is the lexicographically smallest one, so the result
/// is deterministic in M and b.
std::optional<std::vector<i64>> solve_mod_p(const SparseMat& m,
                                            const std::vector<i64>& b, i64 p);

/// How SparseMat residues {0, .., q-1} are lifted to integers for Z-side
/// computations.  Balanced maps v > q/2 to v - q (so q-1 lifts to -1);
/// signed incidence lifts are always this explicit caller choice.
enum class Lift { NonNegative, Balanced };

/// Invariant factors d_1 | d_2 | ... of the integer lift of M (nonzero
/// factors only, in divisibility order).  Throws std::overflow_error if
/// intermediate entries leave the 64-bit range (desk-scale guard).
std::vector<i64> smith_normal_form(const SparseMat& m, Lift lift = Lift::NonNegative);

/// Rank of the integer lift of M over Q.  Computed as the max of
/// rank_mod_p over {2,3,5,7,11,13,10007}; for matrices up to 200x200 the
/// Smith normal form is used as ground truth instead.
int rational_rank(const SparseMat& m, Lift lift = Lift::NonNegative);

namespace detail {
/// Reduce x to the lexicographically smallest element of x + span(kernel).
void lex_minimize_against_kernel(std::vector<i64>& x,
                                 std::vector<std::vector<i64>> kernel, i64 p);
}  // namespace detail

}  // namespace qchain
