#pragma once

#include <map>
#include <optional>
#include <vector>

#include "quatrace/rational_fn.hpp"
#include "quatrace/signed_perm.hpp"

namespace quatrace {

// Integer partition: weakly decreasing positive parts. The empty partition
// (of 0) is the empty vector.
using IntegerPartition = std::vector<int>;

// All partitions of m, largest part first within each partition, ordered
// lexicographically descending ([m], [m-1,1], ..., [1^m]).
std::vector<IntegerPartition> integer_partitions(int m);

// Halved block sizes of the join of two pairings of [n], descending.
// This is the class invariant the Weingarten function depends on.
IntegerPartition lambda_of_join(const Perm& a, const Perm& b);

// Halved fundamental-domain cycle sizes of a premap, descending. Requires
// every such cycle to have even length (true for alternating premaps).
IntegerPartition lambda_of_premap(const SignedPerm& alpha);

BigInt catalan(int k);
// prod_k (-1)^(lam_k - 1) * Catalan(lam_k - 1): the large-N limit of the
// normalized Weingarten value of the class lam.
BigInt catalan_limit(const IntegerPartition& lam);

// Inner product of the invariant tensors indexed by two pairings of [n]:
//   (-1)^(n/2) * (-2N)^(#join blocks),
// a polynomial in N. n must be even and positive.
Poly gram_entry(int n, const Perm& a, const Perm& b);

// The pairing (1,2)(3,4)...(n-1,n).
Perm standard_pairing(int n);

// A pairing whose join with standard_pairing(n) has halved block type lam.
Perm class_representative(int n, const IntegerPartition& lam);

// Weingarten values for pairings of [n], stored per join class. Entries are
// rational functions of N for symbolic tables and constants for tables
// computed at a fixed N (recorded in `at`).
struct WeingartenTable {
  int n = 0;
  std::optional<BigRat> at;
  std::map<IntegerPartition, RationalOfN> by_class;

  const RationalOfN& wg(const IntegerPartition& lam) const;
  RationalOfN entry(const Perm& a, const Perm& b) const;
};

// Symbolic table: one unknown per join class, solved exactly from the rows
// of the Gram matrix against the standard pairing. Capped at 4 pairs.
WeingartenTable weingarten_table(int n);

// Fixed-N table: solves the literal Gram system over rationals at N = at
// (an independent route from the symbolic one) and checks that the solution
// is constant on join classes. Capped at 5 pairs. Throws SemanticError when
// the Gram matrix is singular at that N.
WeingartenTable weingarten_table_at(int n, const BigRat& at);

// wg(lam) := base^(n - parts(lam)) * Wg(lam), base = -2N or 2N, or the
// signed form times a further global (-1)^(n/2) (the orthogonal-group
// normalization evaluated at -2N, whose large-N limit is exactly
// catalan_limit). All three are exposed so that tests pin the expansion's
// convention rather than notation; the exact unitarity anchors and the
// moment-cumulant round trips single out the orthogonal form.
enum class WgBase { SignedTwoN, PositiveTwoN, OrthogonalMinusTwoN };
RationalOfN wg_normalized(const WeingartenTable& t, const IntegerPartition& lam,
                          WgBase base = WgBase::SignedTwoN);

// Partial sum, through paths of length `depth`, of the alternating-path
// expansion of Wg(a, b) at fixed N:
//   (2N)^(-n/2) * sum_k (-1)^k sum_{a = p_0 != p_1 != ... != p_k = b}
//     prod_i (-2N)^(#join(p_i, p_{i+1}) - n/2).
// Exact rational arithmetic; capped at 6 symbols and depth 8.
BigRat weingarten_series_partial(int n, const Perm& a, const Perm& b,
                                 int depth, const BigRat& at);

}  // namespace quatrace
