#pragma once

#include <vector>

#include "quatrace/signed_perm.hpp"

namespace quatrace {

// Set partition of an explicit integer domain.
class SetPartition {
 public:
  SetPartition() = default;
  explicit SetPartition(std::vector<int> domain);  // singletons

  const std::vector<int>& domain() const { return domain_; }
  void unite(int a, int b);
  bool same_block(int a, int b) const;
  int block_count() const;
  // Blocks sorted internally and by leading element (sym_rank order).
  std::vector<std::vector<int>> blocks() const;
  // Block sizes, descending.
  std::vector<int> type() const;

 private:
  int index_of(int k) const;
  int find(int i) const;
  std::vector<int> domain_;         // sorted by sym_rank
  mutable std::vector<int> parent_;
};

SetPartition cycle_partition(const Perm& p);
SetPartition cycle_partition(const SignedPerm& p);
SetPartition cycle_partition(const SupportPerm& p);

SetPartition join(const SetPartition& a, const SetPartition& b);
SetPartition meet(const SetPartition& a, const SetPartition& b);

// Halve every part (asserting evenness); result sorted descending.
std::vector<int> halved_type(const std::vector<int>& type);

// Join of two pairings of [m], as block structure over [m].
SetPartition pairing_join(const Perm& p1, const Perm& p2);

// For pairings p1, p2 of [m]: the number of joint blocks equals both the
// number of fundamental-domain cycles of the premap built from (p1, p2) and
// half the cycle count of p1 p2. Returns the three counts; callers assert
// equality.
struct PairingCounts {
  int join_blocks;
  int fd_cycles;
  int product_halved;
  bool all_equal() const { return join_blocks == fd_cycles && fd_cycles == product_halved; }
};
PairingCounts pairing_identities_check(const Perm& p1, const Perm& p2);

// Pairing of [m] with one distinguished element per pair.
struct MarkedPairing {
  Perm perm;
  std::vector<int> marks;  // exactly one element of each pair
  void validate() const;
};

// Sign transport: rho must map p1's pairs onto p2's pairs and marks onto
// marks. Returns sgn(rho). When p1 and p2 share the underlying pairing this
// equals the closed form (-1)^(#(p1 v p2) + m), m = #(elements marked in
// both); for distinct pairings the closed form can disagree and sgn(rho) is
// the authoritative value.
int transport_sign(const MarkedPairing& p1, const MarkedPairing& p2, const Perm& rho);

}  // namespace quatrace
