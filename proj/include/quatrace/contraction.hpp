#pragma once

#include <algorithm>
#include <functional>
#include <vector>

#include "quatrace/bracket.hpp"
#include "quatrace/quaternion.hpp"
#include "quatrace/signed_perm.hpp"

namespace quatrace {

// The pair of signed premaps defining Re_pi tr_rho(A_1, ..., A_n): matrix
// indices contract along phi_tr, spin indices along phi_re; a symbol whose
// fundamental-domain orientation is negative contributes the adjoint matrix.
struct ContractionSpec {
  SignedPerm phi_re, phi_tr;
};

enum class ValueKind { kScalar, kQuaternion, kMatrix };

template <typename T>
struct Value {
  ValueKind kind = ValueKind::kScalar;
  T scalar{};
  Quat<T> quat{};
  QMatrix<T> matrix{};
};

// Uncontracted output shape: scalar when both maps fix infinity, a
// quaternion (times identity) when only the trace map does, a matrix
// otherwise (real-valued when the Re map fixes infinity).
ValueKind contraction_kind(const ContractionSpec& spec);

// Index bookkeeping shared by the evaluator instantiations. Matrix indices
// live on classes {j, phi_tr(-j)}, spin indices on classes {j, phi_re(-j)};
// the classes through +-infinity are the uncontracted ones. The value is
//   2^-a N^-b  sum over bound classes of
//   prod over fundamental-domain cycles of phi_re of the cycle's entry chain,
// a closed cycle contributing twice the real part of its quaternion product
// and the infinity cycle contributing the open product itself.
struct ContractionPlan {
  int n = 0;
  bool has_inf = false;
  ValueKind kind = ValueKind::kScalar;
  int pow2 = 0, powN = 0;  // prefactor exponents (to divide by)

  // Per-symbol matrix-index class ids; slot layout: k -> k-1 for positive,
  // n + |k| - 1 for negative, 2n and 2n+1 for +-infinity.
  std::vector<int> iclass;
  std::vector<int> bound_iclasses;     // class ids without +-infinity
  int row_iclass = -1, col_iclass = -1;

  struct Slot {
    int mat = 0;        // 0-based input index
    bool conj = false;  // negative fundamental-domain orientation
    int rc = 0, cc = 0; // matrix-index class of the row and column
  };
  std::vector<std::vector<Slot>> closed_cycles;
  std::vector<Slot> inf_chain;
};

ContractionPlan make_contraction_plan(const ContractionSpec& spec);

template <typename T>
Value<T> eval_contraction(const ContractionSpec& spec,
                          const std::vector<QMatrix<T>>& mats) {
  ContractionPlan plan = make_contraction_plan(spec);
  QT_INPUT(static_cast<int>(mats.size()) == plan.n,
           "matrix count must match the contraction degree");
  QT_INPUT(!mats.empty(), "contraction needs at least one matrix");
  const int N = mats[0].size();
  QT_INPUT(N > 0, "matrices must be nonempty");
  for (const auto& m : mats)
    QT_INPUT(m.size() == N, "matrices must share one dimension");

  std::vector<int> ival(plan.iclass.empty()
                            ? 0
                            : 1 + *std::max_element(plan.iclass.begin(),
                                                    plan.iclass.end()),
                        0);
  const int B = static_cast<int>(plan.bound_iclasses.size());

  auto chain = [&](const std::vector<ContractionPlan::Slot>& slots) {
    Quat<T> q = Quat<T>::one();
    for (const auto& s : slots) {
      const Quat<T>& e = s.conj ? mats[s.mat].at(ival[s.cc], ival[s.rc])
                                : mats[s.mat].at(ival[s.rc], ival[s.cc]);
      q = s.conj ? q * e.conj() : q * e;
    }
    return q;
  };

  Value<T> out;
  out.kind = plan.kind;
  if (plan.kind == ValueKind::kMatrix) out.matrix = QMatrix<T>(N);

  // One pass of the bound-class odometer for fixed free-class values.
  auto accumulate = [&]() {
    std::vector<int> digits(B, 0);
    while (true) {
      for (int i = 0; i < B; ++i) ival[plan.bound_iclasses[i]] = digits[i];
      T closed(1);
      for (const auto& cyc : plan.closed_cycles)
        closed = closed * (T(2) * chain(cyc).a);
      if (plan.kind == ValueKind::kScalar) {
        out.scalar += closed;
      } else {
        Quat<T> q = plan.inf_chain.empty() ? Quat<T>::from_real(closed)
                                           : chain(plan.inf_chain) * closed;
        if (plan.kind == ValueKind::kQuaternion)
          out.quat += q;
        else
          out.matrix.at(ival[plan.row_iclass], ival[plan.col_iclass]) += q;
      }
      int i = 0;
      while (i < B && ++digits[i] == N) digits[i++] = 0;
      if (i == B) break;
    }
  };

  if (plan.kind == ValueKind::kMatrix) {
    for (int r = 0; r < N; ++r)
      for (int c = 0; c < N; ++c) {
        ival[plan.row_iclass] = r;
        ival[plan.col_iclass] = c;
        accumulate();
      }
  } else {
    accumulate();
  }

  T denom(1);
  for (int i = 0; i < plan.pow2; ++i) denom = denom * T(2);
  for (int i = 0; i < plan.powN; ++i) denom = denom * T(N);
  switch (plan.kind) {
    case ValueKind::kScalar:
      out.scalar = out.scalar / denom;
      break;
    case ValueKind::kQuaternion:
      out.quat = {out.quat.a / denom, out.quat.b / denom, out.quat.c / denom,
                  out.quat.d / denom};
      break;
    case ValueKind::kMatrix:
      for (int r = 0; r < N; ++r)
        for (int c = 0; c < N; ++c) {
          Quat<T>& q = out.matrix.at(r, c);
          q = {q.a / denom, q.b / denom, q.c / denom, q.d / denom};
        }
      break;
  }
  return out;
}

// Direct evaluation of a bracket expression by quaternion-matrix arithmetic:
// Re entrywise, tr as a quaternion multiple of the identity kept in place in
// the product. Must agree with eval_contraction on the diagram's signed tags.
template <typename T>
Value<T> eval_bracket(const BracketDiagram& d,
                      const std::vector<QMatrix<T>>& mats) {
  d.validate();
  QT_INPUT(static_cast<int>(mats.size()) == d.n(),
           "matrix count must match the diagram");
  const int N = mats.empty() ? 0 : mats[0].size();
  QT_INPUT(N > 0, "matrices must be nonempty");
  for (const auto& m : mats)
    QT_INPUT(m.size() == N, "matrices must share one dimension");

  BracketTree root = bracket_tree(d);
  std::function<QMatrix<T>(const BracketTree&)> eval =
      [&](const BracketTree& node) -> QMatrix<T> {
    QMatrix<T> m = QMatrix<T>::identity(N);
    size_t child = 0, owned = 0;
    for (int p = node.first; p <= node.last; ++p) {
      if (owned < node.owned.size() && node.owned[owned] == p) {
        int k = d.symbols[p];
        m = m * (k > 0 ? mats[k - 1] : adjoint(mats[-k - 1]));
        ++owned;
      } else {
        const BracketTree& c = node.children[child];
        QMatrix<T> v = eval(c);
        m = c.tag == BracketTree::kRe ? m * re(v)
                                      : m.right_scaled(ntr(v));
        p = c.last;
        ++child;
      }
    }
    return m;
  };
  QMatrix<T> top = eval(root);

  DiagramTags tags = tag_permutations(d);
  bool re_closed = tags.phi_re.apply(kInf) == kInf;
  bool tr_closed = tags.phi_tr.apply(kInf) == kInf;
  Value<T> out;
  if (tr_closed) {
    // The product is a quaternion multiple of the identity.
    out.quat = top.at(0, 0);
    if (re_closed) {
      out.kind = ValueKind::kScalar;
      out.scalar = out.quat.a;
    } else {
      out.kind = ValueKind::kQuaternion;
    }
  } else {
    out.kind = ValueKind::kMatrix;
    out.matrix = std::move(top);
  }
  return out;
}

// Signed contraction tags of a diagram, ready for eval_contraction.
ContractionSpec contraction_spec_of(const BracketDiagram& d);

}  // namespace quatrace
