#pragma once

#include <functional>
#include <map>
#include <utility>
#include <vector>

#include "quatrace/contraction.hpp"
#include "quatrace/ensembles.hpp"
#include "quatrace/weingarten.hpp"

namespace quatrace {

// Closed-form cumulant weights f(alpha), alpha a premap on +-[n]. These are
// the hyperedge weights of the topological expansion: 1 on alternating
// pairings (Ginibre), 1 on all pairings (GSE), 1 at the identity
// (deterministic identity factor), a trace of the weight matrices (Wishart),
// and a normalized Weingarten value (Haar).

int f_ginibre(const SignedPerm& alpha);
int f_gse(const SignedPerm& alpha);
int f_identity(const SignedPerm& alpha);

// Re-trace of the weight matrices along the inverse premap's fundamental
// domain; one matrix per symbol, all sharing a dimension.
BigRat f_wishart(const SignedPerm& alpha, const std::vector<QMatrixR>& ds);

// 0 off alternating premaps, else the normalized Weingarten value of the
// halved fundamental-domain cycle type, from a table over pairings of [n].
// The orthogonal-base default is the convention pinned by the exact anchors
// (E Re tr(UU*) = E Re tr(UU*UU*) = 1 and the cumulant round trips below).
RationalOfN f_haar(const SignedPerm& alpha, const WeingartenTable& table,
                   WgBase base = WgBase::OrthogonalMinusTwoN);

// Support class of an ensemble's cumulant; the expansion engine prunes its
// premap enumeration to this class.
enum class CumulantSupport {
  kIdentityOnly,
  kAlternatingInvolutions,
  kInvolutions,
  kAlternating,
  kAll,
};
CumulantSupport cumulant_support(EnsembleKind kind);
bool in_support(CumulantSupport s, const SignedPerm& alpha);

// E[Re_pi tr_pi(X_1,...,X_n)], exact at a fixed dimension.
using MomentOracle = std::function<BigRat(const SignedPerm&)>;

// The contraction evaluating a premap moment: both maps equal, infinity
// fixed (Re of the normalized trace along each fundamental-domain cycle).
ContractionSpec moment_spec(const SignedPerm& pi);

// chi(alpha, pi) = #(alpha)/2 + #(pi)/2 + #(alpha pi^-1)/2 - n.
int premap_pair_chi(const SignedPerm& alpha, const SignedPerm& pi);

// Halved block type of the join of the pairings (delta alpha, delta pi) on
// +-[n]: the class whose Weingarten entry weights the cumulant convolution.
IntegerPartition cumulant_wg_class(const SignedPerm& alpha,
                                   const SignedPerm& pi);

// Normalized matrix cumulant of the moment family:
//   f(alpha) = sum over premaps pi of
//     (-2N)^(chi(alpha,pi) - #(alpha)) * wg(class(alpha,pi)) * moment(pi).
// The table covers pairings of the doubled symbols (2n of them) at a fixed
// N. Inverts the moment formula: feeding it an ensemble's exact moments
// returns that ensemble's closed-form f.
BigRat cumulants_from_moments(const MomentOracle& moments,
                              const SignedPerm& alpha,
                              const WeingartenTable& table,
                              WgBase base = WgBase::OrthogonalMinusTwoN);

// Monte Carlo variant: the oracle returns (estimate, standard error) pairs
// and the result carries sum |weight| * se, a bound rather than an exact
// propagation since moment estimates drawn from shared samples correlate.
std::pair<double, double> cumulants_from_mc_moments(
    const std::function<std::pair<double, double>(const SignedPerm&)>& moments,
    const SignedPerm& alpha, const WeingartenTable& table,
    WgBase base = WgBase::OrthogonalMinusTwoN);

// General-position mixed cumulant. colors[k] (0-based slot k, values >= 1)
// partitions the symbols; alpha must keep each cycle within one color class
// or the cumulant is 0. The convolution then runs over per-color premap
// tuples, with one Weingarten factor per color (tables keyed by color, each
// over that color's doubled symbols, all at one N). With a single color this
// reduces to cumulants_from_moments.
BigRat mixed_general_position_f(const std::vector<int>& colors,
                                const SignedPerm& alpha,
                                const std::map<int, WeingartenTable>& tables,
                                const MomentOracle& moments,
                                WgBase base = WgBase::OrthogonalMinusTwoN);

}  // namespace quatrace
