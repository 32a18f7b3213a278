#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "quatrace/bracket.hpp"
#include "quatrace/signed_perm.hpp"

namespace quatrace {

// Cycle-splitting partial order: pi <= sigma when a diagram with permutation
// pi arises from one with permutation sigma by inserting bracket pairs,
// equivalently |I| - #(sigma pi^-1) == #(pi) - #(sigma).
bool split_order_leq(const SupportPerm& pi, const SupportPerm& sigma);

// pi is planar on rho (same support):
// #(pi) + #(rho) + #(pi rho) - |I| == 2 #(orbits(pi) v orbits(rho)).
bool is_planar_on(const SupportPerm& pi, const SupportPerm& rho);

// Premap planarity of pi on rho: some J with exactly one of +-k per symbol,
// a union of cycles of both inputs, whose restrictions are planar. The
// choice among valid J is immaterial (mirror components carry mirrored,
// equally planar restrictions), so the canonical J keeps the component whose
// leader has the smaller sym_rank.
struct PremapPlanarity {
  enum Status { kPlanar, kSignObstruction, kCrossing };
  Status status = kPlanar;
  std::vector<int> witness;  // J in sym_rank order, when planar
  // Diagnostics on failure: the offending join component, plus, when one
  // exists, a quadruple in cyclic order (a,b,c,d) on one input whose
  // first-return pattern on the other is (a,c)(b,d).
  std::vector<int> component;
  std::optional<std::array<int, 4>> crossing;
  std::string describe() const;
};
PremapPlanarity premap_planarity(const SignedPerm& pi, const SignedPerm& rho);
bool is_planar_on(const SignedPerm& pi, const SignedPerm& rho);

// Exactness of #(meet) - #(join) == (#(meet) - #(pi)) + (#(meet) - #(rho))
// over the orbit partitions. Signed inputs are evaluated on the full signed
// domain (mirror orbits included), which is the variant that rules out
// layouts gluing a symbol to both of its orientations.
bool glb_condition(const SupportPerm& pi, const SupportPerm& rho);
bool glb_condition(const SignedPerm& pi, const SignedPerm& rho);

// The four equivalent conditions for two permutations to admit a common
// layout: an upper bound exists; one exists with the join orbit structure;
// one lies on a geodesic between pi and rho; pi is planar on rho^-1. The
// planarity test decides; when it holds the constructed witness is verified
// against the other three characterizations.
struct UpperBoundStatus {
  bool satisfiable = false;
  SupportPerm join_witness;
  bool witness_above_both = false;
  bool witness_join_orbits = false;
  bool witness_on_geodesic = false;
  bool planar = false;
};
UpperBoundStatus upper_bound_status(const SupportPerm& pi, const SupportPerm& rho);

// Greedy layout construction. Starting from the rank-minimal symbol, repeat:
// follow pi when that lands in an untouched rho-orbit; otherwise take the
// most recent unexhausted rho-image; otherwise start fresh at the smallest
// unused symbol (positive orientation in the signed case). Least-upper-bound
// mode opens a new cycle at each fresh start; cyclic mode keeps one cycle.
enum class ZetaMode { kLeastUpperBound, kCyclic };
SupportPerm construct_zeta(const SupportPerm& pi, const SupportPerm& rho,
                           ZetaMode mode = ZetaMode::kLeastUpperBound);
// Premap variant: runs on the signed domain and returns zeta on a witness J.
// Throws BracketError when phi_re is not planar on phi_tr^-1.
SupportPerm construct_zeta(const SignedPerm& phi_re, const SignedPerm& phi_tr,
                           ZetaMode mode = ZetaMode::kLeastUpperBound);

// Build a diagram whose tag permutations are the given premaps, when one
// exists: requires phi_re planar on phi_tr^-1 (premap sense) and the glb
// equality. On failure names the violated condition.
struct BracketizeResult {
  bool ok = false;
  BracketDiagram diagram;  // when ok
  std::string failure;     // "crossing" | "glb-violation" | "sign-obstruction"
  std::string detail;
};
BracketizeResult bracketize(const SignedPerm& phi_re, const SignedPerm& phi_tr);

}  // namespace quatrace
