#include "quatrace/haar_moments.hpp"

#include <algorithm>
#include <string>

#include "quatrace/error.hpp"
#include "quatrace/signed_perm.hpp"

namespace quatrace {
namespace {

using CplxR = Cplx<BigRat>;

// One embedding entry of a Haar factor along the spin chain. With
// `conjugated` the factor is conj([U_{row,col}]_{out,in}), which resolves to
// a plain entry with both spins negated and a sign of out * in.
struct HaarFactor {
  int row = 0, col = 0;  // positions in the shared digit-value array
  int spin_in = 0, spin_out = 0;
  bool conjugated = false;
};

struct ConstFactor {
  const QMatrixR* mat = nullptr;
  bool adjointed = false;
  int row = 0, col = 0;
  int spin_in = 0, spin_out = 0;
};

// One alternating premap's contribution to the monomial formula, with the
// index and sign constraints it imposes between the factors' entries.
struct AlphaTerm {
  std::vector<int> alpha, dalpha;  // images on +-[w], stored at m + w
  std::vector<int> eta_pairs;      // k > 0 with -k in the fundamental domain
  BigRat coeff;                    // (2N)^(#(alpha)/2 - w) * wg
};

BigRat rat_pow(const BigRat& b, int e) {
  BigRat r(1);
  for (int i = 0; i < (e < 0 ? -e : e); ++i) r *= b;
  return e < 0 ? BigRat(1) / r : r;
}

std::vector<AlphaTerm> alpha_terms(int w, int N, WgBase base) {
  WeingartenTable table = weingarten_table_at(w, BigRat(N));
  std::vector<AlphaTerm> terms;
  for (const SignedPerm& a : enumerate_alternating_premaps(w)) {
    AlphaTerm t;
    t.alpha.resize(2 * w + 1);
    t.dalpha.resize(2 * w + 1);
    for (int m = -w; m <= w; ++m) {
      if (m == 0) continue;
      t.alpha[m + w] = a.apply(m);
      t.dalpha[m + w] = -a.apply(m);
    }
    SupportPerm fd = fundamental_domain(a);
    for (int s : fd.support())
      if (s < 0) t.eta_pairs.push_back(-s);
    t.coeff = rat_pow(BigRat(2 * N), a.cycle_count() / 2 - w) *
              wg_normalized(table, lambda_of_premap(a), base).eval(BigRat(N));
    terms.push_back(std::move(t));
  }
  return terms;
}

}  // namespace

BigRat haar_exact_moment(const ContractionSpec& spec,
                         const std::vector<int>& colors,
                         const std::map<int, EnsembleSpec>& ensembles, int N,
                         WgBase base, long term_cap) {
  ContractionPlan plan = make_contraction_plan(spec);
  QT_INPUT(plan.kind == ValueKind::kScalar,
           "haar oracle needs a fully contracted expression");
  QT_INPUT(static_cast<int>(colors.size()) == plan.n,
           "color count must match the contraction degree");
  QT_INPUT(N >= 1, "matrix dimension must be positive");

  auto spec_of = [&](int slot) -> const EnsembleSpec* {
    int color = colors[slot];
    if (color == 0) return nullptr;
    auto it = ensembles.find(color);
    QT_INPUT(it != ensembles.end(),
             "color " + std::to_string(color) + " is not in the manifest");
    QT_INPUT(it->second.kind == EnsembleKind::kHaarSymplectic ||
                 !is_gaussian(it->second.kind),
             "haar oracle covers haar and deterministic factors only");
    return &it->second;
  };

  // A color with an odd number of factors integrates to zero: -U is again
  // Haar distributed.
  std::map<int, int> occurrences;
  for (const auto& cyc : plan.closed_cycles)
    for (const auto& s : cyc) {
      const EnsembleSpec* es = spec_of(s.mat);
      if (es && es->kind == EnsembleKind::kHaarSymplectic)
        occurrences[colors[s.mat]]++;
    }
  for (const auto& [color, count] : occurrences)
    if (count % 2 != 0) return BigRat(0);

  QMatrixR identity = QMatrixR::identity(N);
  int num_classes = plan.iclass.empty()
                        ? 0
                        : 1 + *std::max_element(plan.iclass.begin(),
                                                plan.iclass.end());
  std::vector<int> values(num_classes, 0);

  std::map<int, std::vector<HaarFactor>> haar_factors;
  std::vector<ConstFactor> const_factors;
  int num_links = 0;
  for (const auto& cyc : plan.closed_cycles) {
    int m = static_cast<int>(cyc.size());
    int link_base = num_links;
    num_links += m;
    for (int k = 0; k < m; ++k) {
      const ContractionPlan::Slot& s = cyc[k];
      int in = link_base + k, out = link_base + (k + 1) % m;
      const EnsembleSpec* es = spec_of(s.mat);
      EnsembleKind kind = es ? es->kind : EnsembleKind::kIdentity;
      switch (kind) {
        case EnsembleKind::kIdentity:
          const_factors.push_back({&identity, false, s.rc, s.cc, in, out});
          break;
        case EnsembleKind::kFixed:
          QT_INPUT(es->D.size() == N,
                   "fixed matrix does not match the dimension");
          if (s.conj)
            const_factors.push_back({&es->D, true, s.cc, s.rc, in, out});
          else
            const_factors.push_back({&es->D, false, s.rc, s.cc, in, out});
          break;
        case EnsembleKind::kHaarSymplectic:
          if (s.conj)
            haar_factors[colors[s.mat]].push_back({s.cc, s.rc, in, out, true});
          else
            haar_factors[colors[s.mat]].push_back({s.rc, s.cc, in, out, false});
          break;
        default:
          QT_CHECK(false, "gaussian slipped past the oracle gate");
      }
    }
  }

  // The premap sums, one per Haar color; their sizes enter the cost bound.
  std::map<int, std::vector<AlphaTerm>> terms;
  double per_assignment = 1 + static_cast<double>(const_factors.size());
  for (const auto& [color, factors] : haar_factors) {
    terms[color] = alpha_terms(static_cast<int>(factors.size()), N, base);
    per_assignment += static_cast<double>(terms[color].size()) *
                      static_cast<double>(factors.size());
  }
  double total = per_assignment;
  for (size_t i = 0; i < plan.bound_iclasses.size(); ++i) total *= N;
  for (int i = 0; i < num_links; ++i) total *= 2;
  if (total > static_cast<double>(term_cap))
    throw CapError("haar enumeration needs about " +
                   std::to_string(static_cast<unsigned long long>(
                       std::min(total, 1e18))) +
                   " terms, over the cap of " + std::to_string(term_cap));

  std::vector<int> spin(num_links, 1);
  CplxR total_sum{BigRat(0), BigRat(0)};

  // E[prod of one color's entries]: resolve each factor to a plain embedding
  // entry, then sum the premap terms whose constraints the indices satisfy.
  std::vector<int> iota, eta;
  auto color_value = [&](const std::vector<HaarFactor>& factors,
                         const std::vector<AlphaTerm>& tlist) {
    int w = static_cast<int>(factors.size());
    iota.assign(2 * w + 1, 0);
    eta.assign(2 * w + 1, 0);
    int sign = 1;
    for (int k = 1; k <= w; ++k) {
      const HaarFactor& f = factors[k - 1];
      int h = spin[f.spin_in], g = spin[f.spin_out];
      if (f.conjugated) {
        sign *= g * h;
        std::swap(h, g);
        h = -h;
        g = -g;
      }
      iota[k + w] = values[f.row];
      iota[-k + w] = values[f.col];
      eta[k + w] = h;
      eta[-k + w] = g;
    }
    BigRat val(0);
    for (const AlphaTerm& t : tlist) {
      bool ok = true;
      for (int m = -w; ok && m <= w; ++m) {
        if (m == 0) continue;
        if (iota[m + w] != iota[t.dalpha[m + w] + w] ||
            (m > 0 ? 1 : -1) * eta[m + w] !=
                (t.alpha[m + w] > 0 ? 1 : -1) * eta[t.dalpha[m + w] + w])
          ok = false;
      }
      if (!ok) continue;
      int prod = sign;
      for (int k : t.eta_pairs) prod *= eta[k + w] * eta[-k + w];
      val += prod > 0 ? t.coeff : -t.coeff;
    }
    return val;
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
    BigRat hv(1);
    for (const auto& [color, factors] : haar_factors) {
      hv *= color_value(factors, terms[color]);
      if (hv == 0) return;
    }
    total_sum += {coeff.re * hv, coeff.im * hv};
  };

  size_t positions = plan.bound_iclasses.size() + static_cast<size_t>(num_links);
  std::vector<int> counter(positions, 0);
  while (true) {
    visit_assignment();
    size_t i = 0;
    for (; i < positions; ++i) {
      int range = i < plan.bound_iclasses.size() ? N : 2;
      if (++counter[i] < range) break;
      counter[i] = 0;
    }
    if (i == positions) break;
    for (size_t k = 0; k <= i && k < positions; ++k) {
      if (k < plan.bound_iclasses.size())
        values[plan.bound_iclasses[k]] = counter[k];
      else
        spin[k - plan.bound_iclasses.size()] = counter[k] == 0 ? 1 : -1;
    }
  }

  QT_CHECK(total_sum.im == 0, "haar expectation has a nonzero imaginary part");
  BigRat p(1);
  for (int i = 0; i < plan.pow2; ++i) p *= 2;
  for (int i = 0; i < plan.powN; ++i) p *= N;
  return total_sum.re / p;
}

}  // namespace quatrace
