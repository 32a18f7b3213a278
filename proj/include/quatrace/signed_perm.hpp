#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace quatrace {

// Symbols are nonzero ints. k and -k are the two orientations of symbol |k|.
// kInf is the sentinel for the distinguished point "inf"; -kInf is "-inf".
inline constexpr int kInf = 1 << 24;

// Total order used everywhere a canonical traversal is needed:
//   inf < 1 < -1 < 2 < -2 < ... < -inf
long sym_rank(int k);

std::string sym_to_string(int k);
int sym_from_string(const std::string& s);  // accepts "inf", "-inf", integers

// ---------------------------------------------------------------------------
// Perm: permutation of {1..m}.

class Perm {
 public:
  Perm() = default;
  explicit Perm(int m);  // identity
  static Perm from_images(std::vector<int> images_1_indexed);
  static Perm from_cycles(int m, const std::vector<std::vector<int>>& cycles);

  int size() const { return static_cast<int>(img_.size()) - 1; }
  int apply(int k) const;
  int operator()(int k) const { return apply(k); }

  Perm inverse() const;
  bool is_identity() const;
  bool is_pairing() const;  // fixed-point-free involution
  int parity() const;       // +1 even, -1 odd; equals (-1)^(m - #cycles)

  std::vector<std::vector<int>> cycles(bool include_fixed = true) const;
  int cycle_count() const;  // fixed points included

  std::string to_cycle_string() const;
  bool operator==(const Perm& o) const { return img_ == o.img_; }

 private:
  std::vector<int> img_;  // img_[0] unused
};

Perm compose(const Perm& a, const Perm& b);  // x -> a(b(x))
std::vector<Perm> enumerate_pairings(int m);
std::uint64_t double_factorial_odd(int m);  // m!! for odd m, 1 for m <= 0

// ---------------------------------------------------------------------------
// SignedPerm: permutation of {+-1..+-n} plus, optionally, {+-inf}.

class SignedPerm {
 public:
  SignedPerm() : n_(0), has_inf_(false), pos_inf_(kInf), neg_inf_(-kInf) {}
  static SignedPerm identity(int n, bool has_inf);
  static SignedPerm from_cycles(int n, bool has_inf, const std::vector<std::vector<int>>& cycles);
  // Cycle notation, e.g. "(inf,3,-8)(4,1)(2)(5,-7,6)". Unlisted points are fixed.
  static SignedPerm from_cycle_string(int n, bool has_inf, const std::string& s);

  int n() const { return n_; }
  bool has_inf() const { return has_inf_; }
  int domain_size() const { return 2 * n_ + (has_inf_ ? 2 : 0); }
  bool in_domain(int k) const;
  std::vector<int> domain() const;  // in sym_rank order

  int apply(int k) const;
  int operator()(int k) const { return apply(k); }

  SignedPerm inverse() const;
  SignedPerm delta_conjugate() const;  // k -> -pi(-k)
  // Conjugation by the sign map k -> eps[|k|] k; eps is 1-indexed, inf fixed.
  SignedPerm sign_conjugate(const std::vector<int>& eps) const;
  SignedPerm extended_with_inf() const;  // adds +-inf as fixed points

  bool is_identity() const;
  // Premap: delta pi delta = pi^{-1} and no cycle contains both k and -k.
  bool is_premap() const;
  bool is_alternating() const;              // sign(pi(k)) = -sign(k) everywhere
  bool is_involution_pairing() const;       // pi^2 = id, no fixed point
  std::optional<std::string> premap_violation() const;  // reason, if any

  // Canonical cycle list: each cycle rotated to its sym_rank-minimal element,
  // cycles sorted by that leader; fixed points included.
  std::vector<std::vector<int>> cycles() const;
  int cycle_count() const;
  int cycle_count_excluding_inf() const;  // cycles not containing +-inf
  int sign() const;                       // (-1)^(|domain| - #cycles)

  bool operator==(const SignedPerm& o) const;

  nlohmann::json to_json() const;
  static SignedPerm from_json(const nlohmann::json& j);
  std::string to_cycle_string() const;

  // Low-level builder: overwrite a single image. The caller is responsible
  // for ending up with a bijection.
  void set(int k, int v);

 private:
  int n_;
  bool has_inf_;
  std::vector<int> img_;  // index k + n_, for k in [-n_, n_]; slot n_ (k=0) unused
  int pos_inf_, neg_inf_;
};

SignedPerm compose(const SignedPerm& a, const SignedPerm& b);  // x -> a(b(x))

// ---------------------------------------------------------------------------
// SupportPerm: permutation of an explicit subset of symbols (e.g. one
// orientation of each symbol). Used for fundamental domains and for the
// positive-side maps of a diagram.

class SupportPerm {
 public:
  SupportPerm() = default;
  static SupportPerm from_map(std::vector<std::pair<int, int>> pairs);
  static SupportPerm from_cycles(const std::vector<std::vector<int>>& cycles);
  static SupportPerm from_cycle_string(const std::string& s);
  static SupportPerm identity_on(std::vector<int> support);
  // Restriction of p to `support`, which must be p-invariant.
  static SupportPerm restriction(const SignedPerm& p, const std::vector<int>& support);

  const std::vector<int>& support() const { return support_; }  // sym_rank order
  int size() const { return static_cast<int>(support_.size()); }
  bool contains(int k) const;
  bool has_inf() const;
  int apply(int k) const;
  int operator()(int k) const { return apply(k); }

  SupportPerm inverse() const;
  std::vector<std::vector<int>> cycles() const;  // canonical, fixed points included
  int cycle_count() const;

  // Identity off the support.
  SignedPerm extend_identity(int n, bool with_inf) const;
  // The doubled map: pi on the support, mirror rule -s -> -pi^{-1}(s) on its
  // negation. Support must contain exactly one of +-k for each of its symbols.
  SignedPerm doubled(int n, bool with_inf) const;

  bool operator==(const SupportPerm& o) const;
  std::string to_cycle_string() const;
  nlohmann::json to_json() const;
  static SupportPerm from_json(const nlohmann::json& j);

 private:
  int index_of(int k) const;  // -1 if absent
  std::vector<int> support_;  // sorted by sym_rank
  std::vector<int> img_;
};

SupportPerm compose(const SupportPerm& a, const SupportPerm& b);  // x -> a(b(x))

// Fundamental domain of a premap: from each cycle/mirror-cycle pair keep the
// cycle in which the sym_rank-minimal symbol of the pair appears.
SupportPerm fundamental_domain(const SignedPerm& premap);

// First-return map on J: k -> first of p(k), p^2(k), ... lying in J.
// Equivalently, delete all non-J symbols from the cycle notation of p.
SupportPerm induced(const SignedPerm& p, const std::vector<int>& J);

// K-map of a positive-support perm phi and a premap alpha:
//   K = phi_plus^{-1} . alpha^{-1} . phi_minus,   phi_minus = delta phi_plus delta,
// with phi_plus = phi extended by the identity.
SignedPerm k_vertices(const SupportPerm& phi, const SignedPerm& alpha);

// Euler characteristic of the pair (phi, alpha):
//   #(phi) + #(alpha)/2 + #(K)/2 - |support|.
// alpha must fix +-inf when present; that fixed pair is not counted in
// #(alpha) (callers that need it can add 1). K cycles through +-inf count.
int euler_characteristic(const SupportPerm& phi, const SignedPerm& alpha);

// Connected components of the pair: orbits of <phi_plus, phi_minus, alpha>
// with mirror-image orbits identified.
int euler_components(const SupportPerm& phi, const SignedPerm& alpha);

// ---------------------------------------------------------------------------
// Enumerations (deterministic order).

std::vector<SignedPerm> enumerate_premaps(int n);
// Premaps with every symbol mapped to the opposite sign; bijective image of
// pairs of pairings (p_plus, p_minus): k -> -p_plus(k), -k -> p_minus(k).
std::vector<SignedPerm> enumerate_alternating_premaps(int n);
SignedPerm alternating_from_pairings(const Perm& p_plus, const Perm& p_minus);
// Fixed-point-free involutive premaps.
std::vector<SignedPerm> enumerate_involution_premaps(int n);

}  // namespace quatrace
