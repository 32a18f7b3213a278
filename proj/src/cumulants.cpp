#include "quatrace/cumulants.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "quatrace/error.hpp"
#include "quatrace/partition.hpp"

namespace quatrace {
namespace {

void require_premap(const SignedPerm& alpha) {
  QT_INPUT(!alpha.has_inf() && alpha.is_premap(),
           "alpha must be a premap on +-[n]");
}

SignedPerm delta_of(const SignedPerm& p) {
  SignedPerm d = p;
  for (int m : p.domain()) d.set(m, -p.apply(m));
  return d;
}

BigRat rat_pow(const BigRat& b, int e) {
  BigRat r(1);
  for (int i = 0; i < (e < 0 ? -e : e); ++i) r *= b;
  return e < 0 ? BigRat(1) / r : r;
}

SignedPerm relabel_up(const SignedPerm& local, const std::vector<int>& slots,
                      int n) {
  SignedPerm g = SignedPerm::identity(n, false);
  int w = static_cast<int>(slots.size());
  for (int j = 1; j <= w; ++j) {
    for (int side : {j, -j}) {
      int v = local.apply(side);
      int img = v > 0 ? slots[v - 1] : -slots[-v - 1];
      g.set(side > 0 ? slots[j - 1] : -slots[j - 1], img);
    }
  }
  return g;
}

SignedPerm relabel_down(const SignedPerm& global,
                        const std::vector<int>& slots) {
  int w = static_cast<int>(slots.size());
  SignedPerm loc = SignedPerm::identity(w, false);
  auto local_of = [&](int s) {
    for (int i = 0; i < w; ++i)
      if (slots[i] == (s > 0 ? s : -s)) return s > 0 ? i + 1 : -(i + 1);
    QT_CHECK(false, "symbol outside the color class");
    return 0;
  };
  for (int j = 1; j <= w; ++j)
    for (int side : {j, -j})
      loc.set(side, local_of(global.apply(side > 0 ? slots[j - 1] : -slots[j - 1])));
  return loc;
}

}  // namespace

int f_ginibre(const SignedPerm& alpha) {
  require_premap(alpha);
  return alpha.is_involution_pairing() && alpha.is_alternating() ? 1 : 0;
}

int f_gse(const SignedPerm& alpha) {
  require_premap(alpha);
  return alpha.is_involution_pairing() ? 1 : 0;
}

int f_identity(const SignedPerm& alpha) {
  require_premap(alpha);
  return alpha.is_identity() ? 1 : 0;
}

BigRat f_wishart(const SignedPerm& alpha, const std::vector<QMatrixR>& ds) {
  require_premap(alpha);
  Value<BigRat> v = eval_contraction<BigRat>(moment_spec(alpha.inverse()), ds);
  QT_CHECK(v.kind == ValueKind::kScalar, "premap contraction must be scalar");
  return v.scalar;
}

RationalOfN f_haar(const SignedPerm& alpha, const WeingartenTable& table,
                   WgBase base) {
  require_premap(alpha);
  if (!alpha.is_alternating()) return RationalOfN();
  QT_INPUT(table.n == alpha.n(),
           "table must cover pairings of the premap's symbols");
  return wg_normalized(table, lambda_of_premap(alpha), base);
}

CumulantSupport cumulant_support(EnsembleKind kind) {
  switch (kind) {
    case EnsembleKind::kGinibre:
      return CumulantSupport::kAlternatingInvolutions;
    case EnsembleKind::kGSE:
      return CumulantSupport::kInvolutions;
    case EnsembleKind::kHaarSymplectic:
      return CumulantSupport::kAlternating;
    case EnsembleKind::kIdentity:
      return CumulantSupport::kIdentityOnly;
    case EnsembleKind::kWishart:
    case EnsembleKind::kFixed:
      return CumulantSupport::kAll;
  }
  QT_CHECK(false, "unhandled ensemble kind");
  return CumulantSupport::kAll;
}

bool in_support(CumulantSupport s, const SignedPerm& alpha) {
  switch (s) {
    case CumulantSupport::kIdentityOnly:
      return alpha.is_identity();
    case CumulantSupport::kAlternatingInvolutions:
      return alpha.is_involution_pairing() && alpha.is_alternating();
    case CumulantSupport::kInvolutions:
      return alpha.is_involution_pairing();
    case CumulantSupport::kAlternating:
      return alpha.is_alternating();
    case CumulantSupport::kAll:
      return true;
  }
  QT_CHECK(false, "unhandled support class");
  return true;
}

ContractionSpec moment_spec(const SignedPerm& pi) {
  QT_INPUT(pi.is_premap(), "moments are indexed by premaps");
  SignedPerm ext = pi.has_inf() ? pi : pi.extended_with_inf();
  return {ext, ext};
}

int premap_pair_chi(const SignedPerm& alpha, const SignedPerm& pi) {
  require_premap(alpha);
  require_premap(pi);
  QT_INPUT(alpha.n() == pi.n(), "premaps must share a degree");
  int s = alpha.cycle_count() + pi.cycle_count() +
          compose(alpha, pi.inverse()).cycle_count();
  QT_CHECK(s % 2 == 0, "odd cycle-count sum in the euler characteristic");
  return s / 2 - alpha.n();
}

IntegerPartition cumulant_wg_class(const SignedPerm& alpha,
                                   const SignedPerm& pi) {
  return halved_type(
      join(cycle_partition(delta_of(alpha)), cycle_partition(delta_of(pi)))
          .type());
}

BigRat cumulants_from_moments(const MomentOracle& moments,
                              const SignedPerm& alpha,
                              const WeingartenTable& table, WgBase base) {
  require_premap(alpha);
  QT_INPUT(table.n == 2 * alpha.n(),
           "table must cover pairings of the doubled symbols");
  QT_INPUT(table.at.has_value(), "cumulant convolution needs a fixed-N table");
  const BigRat N = *table.at;
  const BigRat neg2N = BigRat(-2) * N;
  const int ca = alpha.cycle_count();
  BigRat total(0);
  for (const SignedPerm& pi : enumerate_premaps(alpha.n())) {
    BigRat m = moments(pi);
    if (m == 0) continue;
    BigRat wg = wg_normalized(table, cumulant_wg_class(alpha, pi), base).eval(N);
    total += rat_pow(neg2N, premap_pair_chi(alpha, pi) - ca) * wg * m;
  }
  return total;
}

std::pair<double, double> cumulants_from_mc_moments(
    const std::function<std::pair<double, double>(const SignedPerm&)>& moments,
    const SignedPerm& alpha, const WeingartenTable& table, WgBase base) {
  require_premap(alpha);
  QT_INPUT(table.n == 2 * alpha.n(),
           "table must cover pairings of the doubled symbols");
  QT_INPUT(table.at.has_value(), "cumulant convolution needs a fixed-N table");
  const BigRat N = *table.at;
  const BigRat neg2N = BigRat(-2) * N;
  const int ca = alpha.cycle_count();
  double value = 0, err = 0;
  for (const SignedPerm& pi : enumerate_premaps(alpha.n())) {
    auto [m, se] = moments(pi);
    BigRat wg = wg_normalized(table, cumulant_wg_class(alpha, pi), base).eval(N);
    double w = (rat_pow(neg2N, premap_pair_chi(alpha, pi) - ca) * wg)
                   .convert_to<double>();
    value += w * m;
    err += std::abs(w) * se;
  }
  return {value, err};
}

BigRat mixed_general_position_f(const std::vector<int>& colors,
                                const SignedPerm& alpha,
                                const std::map<int, WeingartenTable>& tables,
                                const MomentOracle& moments, WgBase base) {
  require_premap(alpha);
  const int n = alpha.n();
  QT_INPUT(static_cast<int>(colors.size()) == n,
           "one color per symbol is required");
  std::map<int, std::vector<int>> slots;
  for (int k = 1; k <= n; ++k) {
    QT_INPUT(colors[k - 1] >= 1, "cumulant colors must be positive");
    slots[colors[k - 1]].push_back(k);
  }

  // Support: the cumulant vanishes unless alpha factors over the colors.
  for (const auto& cyc : alpha.cycles()) {
    int c0 = colors[std::abs(cyc[0]) - 1];
    for (int s : cyc)
      if (colors[std::abs(s) - 1] != c0) return BigRat(0);
  }

  std::optional<BigRat> at;
  for (const auto& [color, list] : slots) {
    auto it = tables.find(color);
    QT_INPUT(it != tables.end(),
             "color " + std::to_string(color) + " has no weingarten table");
    QT_INPUT(it->second.n == 2 * static_cast<int>(list.size()),
             "table must cover pairings of the color's doubled symbols");
    QT_INPUT(it->second.at.has_value(),
             "cumulant convolution needs fixed-N tables");
    QT_INPUT(!at || *at == *it->second.at,
             "tables must share one dimension");
    at = it->second.at;
  }
  const BigRat N = *at;
  const BigRat neg2N = BigRat(-2) * N;
  const int ca = alpha.cycle_count();

  // Per color: candidate premaps (relabeled to the color's symbols) and
  // their Weingarten factors against that color's part of alpha.
  struct Candidate {
    SignedPerm global;
    BigRat wg;
  };
  std::vector<std::vector<Candidate>> candidates;
  for (const auto& [color, list] : slots) {
    SignedPerm alpha_local = relabel_down(alpha, list);
    std::vector<Candidate> cs;
    for (const SignedPerm& local :
         enumerate_premaps(static_cast<int>(list.size())))
      cs.push_back(
          {relabel_up(local, list, n),
           wg_normalized(tables.at(color), cumulant_wg_class(alpha_local, local),
                         base)
               .eval(N)});
    candidates.push_back(std::move(cs));
  }

  BigRat total(0);
  std::vector<size_t> pick(candidates.size(), 0);
  while (true) {
    SignedPerm pi = SignedPerm::identity(n, false);
    BigRat wg(1);
    for (size_t c = 0; c < candidates.size(); ++c) {
      const Candidate& cand = candidates[c][pick[c]];
      wg *= cand.wg;
      for (int m : cand.global.domain())
        if (cand.global.apply(m) != m) pi.set(m, cand.global.apply(m));
    }
    BigRat m = moments(pi);
    if (m != 0)
      total += rat_pow(neg2N, premap_pair_chi(alpha, pi) - ca) * wg * m;
    size_t i = 0;
    while (i < pick.size() && ++pick[i] == candidates[i].size()) pick[i++] = 0;
    if (i == pick.size()) break;
  }
  return total;
}

}  // namespace quatrace
