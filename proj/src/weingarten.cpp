#include "quatrace/weingarten.hpp"

#include <algorithm>
#include <string>

#include "quatrace/error.hpp"
#include "quatrace/partition.hpp"

namespace quatrace {

namespace {

constexpr int kMaxSymbolicPairs = 4;
constexpr int kMaxFixedPairs = 5;
constexpr int kMaxSeriesSymbols = 6;
constexpr int kMaxSeriesDepth = 8;

void partitions_rec(int remaining, int max_part, IntegerPartition& cur,
                    std::vector<IntegerPartition>& out) {
  if (remaining == 0) {
    out.push_back(cur);
    return;
  }
  for (int p = std::min(remaining, max_part); p >= 1; --p) {
    cur.push_back(p);
    partitions_rec(remaining - p, p, cur, out);
    cur.pop_back();
  }
}

void require_pairings(int n, const Perm& a, const Perm& b) {
  QT_INPUT(n > 0 && n % 2 == 0, "pairings need an even positive symbol count");
  QT_INPUT(a.size() == n && b.size() == n, "pairing size does not match n");
  QT_INPUT(a.is_pairing() && b.is_pairing(), "arguments must be pairings");
}

BigRat rat_pow(const BigRat& base, int e) {
  if (e < 0) {
    QT_INPUT(base != 0, "cannot raise zero to a negative power");
    return 1 / rat_pow(base, -e);
  }
  BigRat r = 1;
  for (int i = 0; i < e; ++i) r *= base;
  return r;
}

RationalOfN constant(const BigRat& v) {
  return RationalOfN(Poly(BigInt(boost::multiprecision::numerator(v)))) /
         RationalOfN(Poly(BigInt(boost::multiprecision::denominator(v))));
}

}  // namespace

std::vector<IntegerPartition> integer_partitions(int m) {
  QT_INPUT(m >= 0, "cannot partition a negative integer");
  std::vector<IntegerPartition> out;
  IntegerPartition cur;
  partitions_rec(m, std::max(m, 1), cur, out);
  return out;
}

IntegerPartition lambda_of_join(const Perm& a, const Perm& b) {
  require_pairings(a.size(), a, b);
  return halved_type(pairing_join(a, b).type());
}

IntegerPartition lambda_of_premap(const SignedPerm& alpha) {
  std::vector<int> sizes;
  for (const auto& cyc : fundamental_domain(alpha).cycles())
    sizes.push_back(static_cast<int>(cyc.size()));
  std::sort(sizes.begin(), sizes.end(), std::greater<int>());
  for (int s : sizes)
    QT_INPUT(s % 2 == 0, "premap has an odd fundamental-domain cycle");
  return halved_type(sizes);
}

BigInt catalan(int k) {
  QT_INPUT(k >= 0, "catalan numbers are indexed from 0");
  BigInt c = 1;
  for (int i = 0; i < k; ++i) c = c * 2 * (2 * i + 1) / (i + 2);
  return c;
}

BigInt catalan_limit(const IntegerPartition& lam) {
  BigInt r = 1;
  for (int p : lam) {
    QT_INPUT(p >= 1, "partition parts must be positive");
    r *= catalan(p - 1);
    if ((p - 1) % 2 == 1) r = -r;
  }
  return r;
}

Poly gram_entry(int n, const Perm& a, const Perm& b) {
  require_pairings(n, a, b);
  int blocks = pairing_join(a, b).block_count();
  std::vector<BigInt> coeffs(blocks + 1, BigInt(0));
  BigInt lead = 1;
  for (int i = 0; i < blocks; ++i) lead *= -2;
  if ((n / 2) % 2 == 1) lead = -lead;
  coeffs[blocks] = lead;
  return Poly::from_coeffs(std::move(coeffs));
}

Perm standard_pairing(int n) {
  QT_INPUT(n >= 0 && n % 2 == 0, "standard pairing needs an even symbol count");
  std::vector<std::vector<int>> cycles;
  for (int k = 1; k < n; k += 2) cycles.push_back({k, k + 1});
  return Perm::from_cycles(n, cycles);
}

Perm class_representative(int n, const IntegerPartition& lam) {
  int total = 0;
  for (int p : lam) total += p;
  QT_INPUT(2 * total == n, "partition weight must be n/2");
  std::vector<std::vector<int>> cycles;
  int a = 1;
  for (int p : lam) {
    // Within the block [a, a+2p): shift the standard pairs by one so the
    // join with standard_pairing sweeps the whole block.
    for (int i = 0; i < p - 1; ++i) cycles.push_back({a + 1 + 2 * i, a + 2 + 2 * i});
    cycles.push_back({a + 2 * p - 1, a});
    a += 2 * p;
  }
  return Perm::from_cycles(n, cycles);
}

const RationalOfN& WeingartenTable::wg(const IntegerPartition& lam) const {
  auto it = by_class.find(lam);
  QT_INPUT(it != by_class.end(), "partition is not a class of this table");
  return it->second;
}

RationalOfN WeingartenTable::entry(const Perm& a, const Perm& b) const {
  QT_INPUT(a.size() == n && b.size() == n, "pairing size does not match the table");
  return wg(lambda_of_join(a, b));
}

WeingartenTable weingarten_table(int n) {
  QT_INPUT(n >= 0 && n % 2 == 0,
           "weingarten table needs an even symbol count, got " + std::to_string(n));
  if (n / 2 > kMaxSymbolicPairs)
    throw CapError("symbolic weingarten table capped at " +
                   std::to_string(2 * kMaxSymbolicPairs) + " symbols, got " +
                   std::to_string(n));
  WeingartenTable t;
  t.n = n;
  if (n == 0) {
    t.by_class[{}] = RationalOfN(1);
    return t;
  }
  std::vector<IntegerPartition> classes = integer_partitions(n / 2);
  std::vector<Perm> pairings = enumerate_pairings(n);
  Perm tau0 = standard_pairing(n);
  std::map<IntegerPartition, int> col;
  for (int j = 0; j < static_cast<int>(classes.size()); ++j) col[classes[j]] = j;

  // One linear equation per class: row(mu) . Wg-column(tau0) = [mu trivial],
  // with the unknown column grouped by the class of each pairing.
  std::vector<std::vector<Poly>> a(classes.size(),
                                   std::vector<Poly>(classes.size(), Poly(0L)));
  std::vector<Poly> b(classes.size(), Poly(0L));
  for (int i = 0; i < static_cast<int>(classes.size()); ++i) {
    Perm sigma = class_representative(n, classes[i]);
    for (const Perm& pi : pairings)
      a[i][col.at(lambda_of_join(pi, tau0))] =
          a[i][col.at(lambda_of_join(pi, tau0))] + gram_entry(n, sigma, pi);
    if (sigma == tau0) b[i] = Poly(1L);
  }
  std::vector<RationalOfN> x = solve_linear_system(std::move(a), std::move(b));
  for (int j = 0; j < static_cast<int>(classes.size()); ++j)
    t.by_class[classes[j]] = x[j];
  return t;
}

WeingartenTable weingarten_table_at(int n, const BigRat& at) {
  QT_INPUT(n >= 0 && n % 2 == 0,
           "weingarten table needs an even symbol count, got " + std::to_string(n));
  if (n / 2 > kMaxFixedPairs)
    throw CapError("fixed-N weingarten table capped at " +
                   std::to_string(2 * kMaxFixedPairs) + " symbols, got " +
                   std::to_string(n));
  QT_INPUT(at != 0, "weingarten table undefined at N = 0");
  WeingartenTable t;
  t.n = n;
  t.at = at;
  if (n == 0) {
    t.by_class[{}] = RationalOfN(1);
    return t;
  }
  std::vector<Perm> pairings = enumerate_pairings(n);
  int m = static_cast<int>(pairings.size());
  Perm tau0 = standard_pairing(n);
  int t0 = static_cast<int>(std::find(pairings.begin(), pairings.end(), tau0) -
                            pairings.begin());
  QT_CHECK(t0 < m, "standard pairing missing from the enumeration");

  // Augmented literal Gram system G x = e_{tau0}, solved over rationals.
  std::vector<std::vector<BigRat>> g(m, std::vector<BigRat>(m + 1, 0));
  for (int i = 0; i < m; ++i) {
    for (int j = i; j < m; ++j) {
      BigRat v = rat_pow(-2 * at, pairing_join(pairings[i], pairings[j]).block_count());
      if ((n / 2) % 2 == 1) v = -v;
      g[i][j] = v;
      g[j][i] = v;
    }
    g[i][m] = (i == t0) ? 1 : 0;
  }
  for (int c = 0; c < m; ++c) {
    int pivot = -1;
    for (int r = c; r < m; ++r)
      if (g[r][c] != 0) {
        pivot = r;
        break;
      }
    if (pivot < 0)
      throw SemanticError("gram matrix is singular at N = " + at.str());
    std::swap(g[c], g[pivot]);
    for (int r = 0; r < m; ++r) {
      if (r == c || g[r][c] == 0) continue;
      BigRat f = g[r][c] / g[c][c];
      for (int j = c; j <= m; ++j) g[r][j] -= f * g[c][j];
    }
  }
  std::map<IntegerPartition, BigRat> seen;
  for (int i = 0; i < m; ++i) {
    BigRat v = g[i][m] / g[i][i];
    IntegerPartition lam = lambda_of_join(pairings[i], tau0);
    auto it = seen.find(lam);
    if (it == seen.end())
      seen[lam] = v;
    else
      QT_CHECK(it->second == v, "weingarten value is not constant on a join class");
  }
  for (const auto& [lam, v] : seen) t.by_class[lam] = constant(v);
  return t;
}

RationalOfN wg_normalized(const WeingartenTable& t, const IntegerPartition& lam,
                          WgBase base) {
  int e = t.n - static_cast<int>(lam.size());
  bool negative_base = base != WgBase::PositiveTwoN;
  RationalOfN scale;
  if (t.at) {
    BigRat b = 2 * *t.at;
    if (negative_base) b = -b;
    scale = constant(rat_pow(b, e));
  } else {
    Poly b = Poly::from_coeffs({BigInt(0), BigInt(negative_base ? -2 : 2)});
    scale = RationalOfN(b).pow(e);
  }
  if (base == WgBase::OrthogonalMinusTwoN && (t.n / 2) % 2 != 0)
    scale = -scale;
  return scale * t.wg(lam);
}

BigRat weingarten_series_partial(int n, const Perm& a, const Perm& b,
                                 int depth, const BigRat& at) {
  require_pairings(n, a, b);
  if (n > kMaxSeriesSymbols)
    throw CapError("weingarten series capped at " +
                   std::to_string(kMaxSeriesSymbols) + " symbols, got " +
                   std::to_string(n));
  if (depth > kMaxSeriesDepth)
    throw CapError("weingarten series capped at depth " +
                   std::to_string(kMaxSeriesDepth) + ", got " +
                   std::to_string(depth));
  QT_INPUT(depth >= 0, "series depth must be nonnegative");
  QT_INPUT(at != 0, "weingarten series undefined at N = 0");
  std::vector<Perm> pairings = enumerate_pairings(n);
  int m = static_cast<int>(pairings.size());
  auto index = [&](const Perm& p) {
    return static_cast<int>(std::find(pairings.begin(), pairings.end(), p) -
                            pairings.begin());
  };
  int ia = index(a), ib = index(b);
  std::vector<std::vector<BigRat>> w(m, std::vector<BigRat>(m, 0));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      if (i == j) continue;
      int blocks = pairing_join(pairings[i], pairings[j]).block_count();
      w[i][j] = rat_pow(-2 * at, blocks - n / 2);
    }
  std::vector<BigRat> v(m, 0);
  v[ia] = 1;
  BigRat total = 0;
  int sign = 1;
  for (int k = 0;; ++k) {
    total += sign * v[ib];
    if (k == depth) break;
    sign = -sign;
    std::vector<BigRat> next(m, 0);
    for (int i = 0; i < m; ++i) {
      if (v[i] == 0) continue;
      for (int j = 0; j < m; ++j)
        if (j != i) next[j] += v[i] * w[i][j];
    }
    v = std::move(next);
  }
  return total * rat_pow(2 * at, -n / 2);
}

}  // namespace quatrace
