#include "quatrace/wick.hpp"

#include <algorithm>
#include <string>

#include "quatrace/error.hpp"

namespace quatrace {
namespace {

using CplxR = Cplx<BigRat>;

// One 2x2-embedding entry of a Gaussian matrix along a spin chain. With
// `conjugated` the factor is conj([g_row,col]_{out,in}) (the entry of the
// conjugate quaternion); `gse` adds the adjoint branch, making the factor an
// entry of g + g*.
struct VarFactor {
  int color = 0;
  bool conjugated = false;
  bool gse = false;
  int row = 0, col = 0;  // positions in the shared digit-value array
  int spin_in = 0, spin_out = 0;
};

// Deterministic counterpart; `adjointed` means conj([m_row,col]_{out,in}).
struct ConstFactor {
  const QMatrixR* mat = nullptr;
  bool adjointed = false;
  int row = 0, col = 0;
  int spin_in = 0, spin_out = 0;
};

// Real Gaussian component id: which scalar N(0, 1/4) variable an embedding
// coefficient multiplies.
int var_id(int color, int r, int c, int comp) {
  return ((color * 64 + r) * 64 + c) * 4 + comp;
}

struct Mono {
  CplxR coeff;
  int var;
};

// [g_{r,c}]_{h,g} as a linear form in the four components a,b,c,d: the
// embedding is [[a+bi, c+di], [-c+di, a-bi]].
void entry_monomials(int color, int r, int c, int h, int g, bool conjugated,
                     std::vector<Mono>& out) {
  if (conjugated) {
    // conj([q]_{g,h}): swap spins, conjugate coefficients.
    int n = static_cast<int>(out.size());
    entry_monomials(color, r, c, g, h, false, out);
    for (int i = n; i < static_cast<int>(out.size()); ++i)
      out[i].coeff = out[i].coeff.conj();
    return;
  }
  BigRat one(1), neg(-1);
  if (h == 1 && g == 1) {
    out.push_back({{one, BigRat(0)}, var_id(color, r, c, 0)});
    out.push_back({{BigRat(0), one}, var_id(color, r, c, 1)});
  } else if (h == 1 && g == -1) {
    out.push_back({{one, BigRat(0)}, var_id(color, r, c, 2)});
    out.push_back({{BigRat(0), one}, var_id(color, r, c, 3)});
  } else if (h == -1 && g == 1) {
    out.push_back({{neg, BigRat(0)}, var_id(color, r, c, 2)});
    out.push_back({{BigRat(0), one}, var_id(color, r, c, 3)});
  } else {
    out.push_back({{one, BigRat(0)}, var_id(color, r, c, 0)});
    out.push_back({{BigRat(0), neg}, var_id(color, r, c, 1)});
  }
}

}  // namespace

BigRat wick_exact_gaussian(const ContractionSpec& spec,
                           const std::vector<int>& colors,
                           const std::map<int, EnsembleSpec>& ensembles, int N,
                           long term_cap) {
  ContractionPlan plan = make_contraction_plan(spec);
  QT_INPUT(plan.kind == ValueKind::kScalar,
           "wick oracle needs a fully contracted expression");
  QT_INPUT(static_cast<int>(colors.size()) == plan.n,
           "color count must match the contraction degree");
  QT_INPUT(N >= 1, "matrix dimension must be positive");

  auto spec_of = [&](int slot) -> const EnsembleSpec* {
    int color = colors[slot];
    if (color == 0) return nullptr;
    auto it = ensembles.find(color);
    QT_INPUT(it != ensembles.end(),
             "color " + std::to_string(color) + " is not in the manifest");
    QT_INPUT(it->second.kind != EnsembleKind::kHaarSymplectic,
             "wick oracle covers gaussian families only");
    return &it->second;
  };

  // Occurrence parity: the word is odd under g -> -g for a color with an odd
  // number of linear slots, so the expectation vanishes.
  std::map<int, int> occurrences;
  for (const auto& cyc : plan.closed_cycles)
    for (const auto& s : cyc) {
      const EnsembleSpec* es = spec_of(s.mat);
      if (es && is_gaussian(es->kind)) occurrences[colors[s.mat]]++;
    }
  for (const auto& [color, count] : occurrences) {
    EnsembleKind k = ensembles.at(color).kind;
    if (k != EnsembleKind::kWishart && count % 2 != 0) return BigRat(0);
  }

  // Assemble the factor chains: one digit per bound index class (range N),
  // plus two internal digits (range M) and two extra spin links per Wishart
  // slot; deterministic slots become constant factors.
  QMatrixR identity = QMatrixR::identity(N);
  int num_classes = plan.iclass.empty()
                        ? 0
                        : 1 + *std::max_element(plan.iclass.begin(), plan.iclass.end());
  std::vector<int> values(num_classes, 0);  // grows as digits are added
  struct Digit {
    int id, range;
  };
  std::vector<Digit> digits;
  for (int cls : plan.bound_iclasses) digits.push_back({cls, N});
  auto fresh_digit = [&](int range) {
    int id = static_cast<int>(values.size());
    values.push_back(0);
    digits.push_back({id, range});
    return id;
  };

  std::vector<VarFactor> var_factors;
  std::vector<ConstFactor> const_factors;
  int num_links = 0;
  for (const auto& cyc : plan.closed_cycles) {
    int m = static_cast<int>(cyc.size());
    int base = num_links;
    num_links += m;
    for (int k = 0; k < m; ++k) {
      const ContractionPlan::Slot& s = cyc[k];
      int in = base + k, out = base + (k + 1) % m;
      const EnsembleSpec* es = spec_of(s.mat);
      EnsembleKind kind = es ? es->kind : EnsembleKind::kIdentity;
      int color = colors[s.mat];
      switch (kind) {
        case EnsembleKind::kIdentity:
          const_factors.push_back({&identity, false, s.rc, s.cc, in, out});
          break;
        case EnsembleKind::kFixed:
          QT_INPUT(es->D.size() == N, "fixed matrix does not match the dimension");
          if (s.conj)
            const_factors.push_back({&es->D, true, s.cc, s.rc, in, out});
          else
            const_factors.push_back({&es->D, false, s.rc, s.cc, in, out});
          break;
        case EnsembleKind::kGinibre:
          if (s.conj)
            var_factors.push_back({color, true, false, s.cc, s.rc, in, out});
          else
            var_factors.push_back({color, false, false, s.rc, s.cc, in, out});
          break;
        case EnsembleKind::kGSE:
          // g + g* is self-adjoint, so the starred slot uses the same form.
          var_factors.push_back({color, false, true, s.rc, s.cc, in, out});
          break;
        case EnsembleKind::kWishart: {
          // Entry (r,c) of g* D g = sum_{a,b} conj(g_{a,r}) D_{a,b} g_{b,c};
          // the starred slot is the same with D replaced by its adjoint.
          int a = fresh_digit(es->M), b = fresh_digit(es->M);
          int sl = num_links++, tl = num_links++;
          var_factors.push_back({color, true, false, a, s.rc, in, sl});
          if (s.conj)
            const_factors.push_back({&es->D, true, b, a, sl, tl});
          else
            const_factors.push_back({&es->D, false, a, b, sl, tl});
          var_factors.push_back({color, false, false, b, s.cc, tl, out});
          break;
        }
        case EnsembleKind::kHaarSymplectic:
          QT_CHECK(false, "haar slipped past the oracle gate");
      }
    }
  }

  // Total term count: index digits x spin links x per-factor branches.
  double total = 1;
  for (const Digit& d : digits) total *= d.range;
  for (int i = 0; i < num_links; ++i) total *= 2;
  for (const VarFactor& f : var_factors) total *= f.gse ? 4 : 2;
  if (total > static_cast<double>(term_cap))
    throw CapError("wick enumeration needs about " +
                   std::to_string(static_cast<unsigned long long>(
                       std::min(total, 1e18))) +
                   " terms, over the cap of " + std::to_string(term_cap));

  std::vector<BigRat> moment(2 * var_factors.size() + 1, BigRat(0));
  moment[0] = BigRat(1);
  for (size_t d = 2; d < moment.size(); d += 2)
    moment[d] = moment[d - 2] * BigRat(static_cast<long>(d) - 1, 4);



  std::vector<int> spin(num_links, 1);
  std::vector<std::vector<Mono>> resolved(var_factors.size());
  std::vector<int> leaf_vars, grouped;
  CplxR total_sum{BigRat(0), BigRat(0)};

  // Depth-first over the variable factors' monomials; at a leaf the factors'
  // variables are grouped and the per-variable moments multiplied in.
  std::function<void(size_t, CplxR)> expand = [&](size_t idx, CplxR coeff) {
    if (idx == var_factors.size()) {
      // leaf_vars doubles as the recursion stack, so group a copy.
      grouped = leaf_vars;
      std::sort(grouped.begin(), grouped.end());
      BigRat m(1);
      for (size_t i = 0; i < grouped.size();) {
        size_t j = i;
        while (j < grouped.size() && grouped[j] == grouped[i]) ++j;
        size_t deg = j - i;
        if (deg % 2 != 0) return;
        m *= moment[deg];
        i = j;
      }
      total_sum += {coeff.re * m, coeff.im * m};
      return;
    }
    for (const Mono& mo : resolved[idx]) {
      leaf_vars.push_back(mo.var);
      expand(idx + 1, coeff * mo.coeff);
      leaf_vars.pop_back();
    }
  };

  auto visit_assignment = [&]() {
    CplxR coeff{BigRat(1), BigRat(0)};
    for (const ConstFactor& f : const_factors) {
      int r = values[f.row], c = values[f.col];
      int h = spin[f.spin_in], g = spin[f.spin_out];
      CplxR v = f.adjointed ? f.mat->at(r, c).embedding_entry(g, h).conj()
                            : f.mat->at(r, c).embedding_entry(h, g);
      if (v.re == 0 && v.im == 0) return;
      coeff = coeff * v;
    }
    for (size_t i = 0; i < var_factors.size(); ++i) {
      const VarFactor& f = var_factors[i];
      resolved[i].clear();
      int r = values[f.row], c = values[f.col];
      int h = spin[f.spin_in], g = spin[f.spin_out];
      entry_monomials(f.color, r, c, h, g, f.conjugated, resolved[i]);
      if (f.gse) entry_monomials(f.color, c, r, h, g, true, resolved[i]);
    }
    expand(0, coeff);
  };

  // Odometer over index digits and spin links together.
  size_t positions = digits.size() + static_cast<size_t>(num_links);
  std::vector<int> counter(positions, 0);
  while (true) {
    visit_assignment();
    size_t i = 0;
    for (; i < positions; ++i) {
      int range = i < digits.size() ? digits[i].range : 2;
      if (++counter[i] < range) break;
      counter[i] = 0;
    }
    if (i == positions) break;
    for (size_t k = 0; k <= i && k < positions; ++k) {
      if (k < digits.size())
        values[digits[k].id] = counter[k];
      else
        spin[k - digits.size()] = counter[k] == 0 ? 1 : -1;
    }
  }

  // Prefactor: the plan's 2^-a N^-b and each slot's normalization
  // (1/sqrt(N) Ginibre, 1/sqrt(2N) GSE, 1/N Wishart). The parities checked
  // above make the square roots cancel to integer powers.
  BigRat result = total_sum.re;
  QT_CHECK(total_sum.im == 0, "wick expectation has a nonzero imaginary part");
  BigRat p(1);
  for (int i = 0; i < plan.pow2; ++i) p *= 2;
  for (int i = 0; i < plan.powN; ++i) p *= N;
  for (const auto& [color, count] : occurrences) {
    switch (ensembles.at(color).kind) {
      case EnsembleKind::kGinibre:
        for (int i = 0; i < count / 2; ++i) p *= N;
        break;
      case EnsembleKind::kGSE:
        for (int i = 0; i < count / 2; ++i) p *= 2 * N;
        break;
      case EnsembleKind::kWishart:
        for (int i = 0; i < count; ++i) p *= N;
        break;
      default:
        QT_CHECK(false, "non-gaussian color in the occurrence map");
    }
  }
  return result / p;
}

}  // namespace quatrace
