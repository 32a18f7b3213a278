#include "quatrace/contraction.hpp"

#include <algorithm>

#include "quatrace/error.hpp"

namespace quatrace {

namespace {

int sidx(int k, int n) {
  if (k == kInf) return 2 * n;
  if (k == -kInf) return 2 * n + 1;
  return k > 0 ? k - 1 : n + (-k) - 1;
}

// Classes are the orbits {j, p(-j)} (pairs, since p is a premap).
std::vector<int> index_classes(const SignedPerm& p) {
  int n = p.n();
  int m = 2 * n + (p.has_inf() ? 2 : 0);
  std::vector<int> cls(m, -1);
  int next = 0;
  for (int j : p.domain()) {
    int a = sidx(j, n);
    if (cls[a] >= 0) continue;
    int partner = p.apply(-j);
    QT_CHECK(p.apply(-partner) == j, "index pairing is not involutive");
    cls[a] = next;
    cls[sidx(partner, n)] = next;
    ++next;
  }
  return cls;
}

}  // namespace

ValueKind contraction_kind(const ContractionSpec& spec) {
  if (!spec.phi_re.has_inf()) return ValueKind::kScalar;
  bool re_closed = spec.phi_re.apply(kInf) == kInf;
  bool tr_closed = spec.phi_tr.apply(kInf) == kInf;
  if (tr_closed) return re_closed ? ValueKind::kScalar : ValueKind::kQuaternion;
  return ValueKind::kMatrix;
}

ContractionPlan make_contraction_plan(const ContractionSpec& spec) {
  const SignedPerm& pre = spec.phi_re;
  const SignedPerm& ptr = spec.phi_tr;
  QT_INPUT(pre.is_premap(), "phi_re must be a premap");
  QT_INPUT(ptr.is_premap(), "phi_tr must be a premap");
  QT_INPUT(pre.n() == ptr.n() && pre.has_inf() == ptr.has_inf(),
           "phi_re and phi_tr must share a domain");

  ContractionPlan plan;
  plan.n = pre.n();
  plan.has_inf = pre.has_inf();
  plan.kind = contraction_kind(spec);
  plan.iclass = index_classes(ptr);

  std::vector<bool> bound(plan.n + 1, true);
  if (plan.has_inf) {
    plan.col_iclass = plan.iclass[sidx(kInf, plan.n)];
    plan.row_iclass = plan.iclass[sidx(-kInf, plan.n)];
    bound[plan.col_iclass] = false;
    bound[plan.row_iclass] = false;
  }
  int total = plan.n + (plan.has_inf ? 1 : 0);
  for (int c = 0; c < total; ++c)
    if (bound[c]) plan.bound_iclasses.push_back(c);

  SupportPerm fd = fundamental_domain(pre);
  auto slot_of = [&](int k) {
    ContractionPlan::Slot s;
    s.mat = std::abs(k) - 1;
    s.conj = k < 0;
    s.rc = plan.iclass[sidx(k, plan.n)];
    s.cc = plan.iclass[sidx(-k, plan.n)];
    return s;
  };
  for (const auto& cyc : fd.cycles()) {
    if (cyc[0] == kInf) {
      // The infinity cycle is not counted in the prefactor.
      for (size_t i = 1; i < cyc.size(); ++i)
        plan.inf_chain.push_back(slot_of(cyc[i]));
    } else {
      std::vector<ContractionPlan::Slot> slots;
      for (int k : cyc) slots.push_back(slot_of(k));
      plan.closed_cycles.push_back(std::move(slots));
      ++plan.pow2;
    }
  }
  SupportPerm fdt = fundamental_domain(ptr);
  plan.powN = fdt.cycle_count() - (plan.has_inf ? 1 : 0);
  return plan;
}

ContractionSpec contraction_spec_of(const BracketDiagram& d) {
  DiagramTags tags = tag_permutations(d);
  return {signed_tag(tags.phi_re, tags.eps), signed_tag(tags.phi_tr, tags.eps)};
}

}  // namespace quatrace
