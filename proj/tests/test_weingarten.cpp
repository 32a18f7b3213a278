#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "quatrace/error.hpp"
#include "quatrace/partition.hpp"
#include "quatrace/weingarten.hpp"

using namespace quatrace;

namespace {

Poly N() { return Poly::variable(); }
Poly C(long v) { return Poly(v); }

// 2N(2N+1)(2N-2), the four-symbol table denominator.
Poly four_symbol_den() {
  return (C(2) * N()) * (C(2) * N() + C(1)) * (C(2) * N() - C(2));
}

RationalOfN of(const BigRat& v) {
  return RationalOfN(Poly(BigInt(boost::multiprecision::numerator(v)))) /
         RationalOfN(Poly(BigInt(boost::multiprecision::denominator(v))));
}

BigRat abs_rat(const BigRat& v) { return v < 0 ? BigRat(-v) : v; }

}  // namespace

TEST_CASE("integer partitions enumerate largest-part-first") {
  CHECK(integer_partitions(0) == std::vector<IntegerPartition>{{}});
  CHECK(integer_partitions(4) ==
        std::vector<IntegerPartition>{{4}, {3, 1}, {2, 2}, {2, 1, 1}, {1, 1, 1, 1}});
  int counts[] = {1, 1, 2, 3, 5, 7, 11, 15, 22};
  for (int m = 0; m <= 8; ++m)
    CHECK(integer_partitions(m).size() == static_cast<size_t>(counts[m]));
}

TEST_CASE("catalan numbers and the alternating product limit") {
  long ref[] = {1, 1, 2, 5, 14, 42};
  for (int k = 0; k <= 5; ++k) CHECK(catalan(k) == BigInt(ref[k]));
  CHECK(catalan_limit({1}) == BigInt(1));
  CHECK(catalan_limit({2}) == BigInt(-1));
  CHECK(catalan_limit({3, 2}) == BigInt(-2));
  CHECK(catalan_limit({1, 1}) == BigInt(1));
  CHECK(catalan_limit({4}) == BigInt(-5));
}

TEST_CASE("gram entries match the closed forms for two and four symbols") {
  Perm t2 = standard_pairing(2);
  CHECK(gram_entry(2, t2, t2) == Poly::from_coeffs({BigInt(0), BigInt(2)}));

  std::vector<Perm> p4 = enumerate_pairings(4);
  REQUIRE(p4.size() == 3);
  for (const Perm& a : p4)
    for (const Perm& b : p4) {
      Poly g = gram_entry(4, a, b);
      if (a == b)
        CHECK(g == Poly::from_coeffs({BigInt(0), BigInt(0), BigInt(4)}));
      else
        CHECK(g == Poly::from_coeffs({BigInt(0), BigInt(-2)}));
      CHECK(g == gram_entry(4, b, a));
    }
}

TEST_CASE("class representatives realize every join class") {
  for (int n : {2, 4, 6, 8}) {
    Perm tau0 = standard_pairing(n);
    for (const IntegerPartition& lam : integer_partitions(n / 2)) {
      Perm sigma = class_representative(n, lam);
      CHECK(sigma.is_pairing());
      CHECK(lambda_of_join(sigma, tau0) == lam);
    }
  }
}

TEST_CASE("lambda of an alternating premap equals the pairing join class") {
  for (int n : {2, 4, 6}) {
    std::vector<Perm> pairings = enumerate_pairings(n);
    for (const Perm& a : pairings)
      for (const Perm& b : pairings)
        CHECK(lambda_of_premap(alternating_from_pairings(a, b)) ==
              lambda_of_join(a, b));
  }
}

TEST_CASE("weingarten table solves the two and four symbol systems") {
  WeingartenTable t2 = weingarten_table(2);
  REQUIRE(t2.by_class.size() == 1);
  CHECK(t2.wg({1}) == RationalOfN(C(1), C(2) * N()));

  WeingartenTable t4 = weingarten_table(4);
  REQUIRE(t4.by_class.size() == 2);
  CHECK(t4.wg({1, 1}) == RationalOfN(C(2) * N() - C(1), four_symbol_den()));
  CHECK(t4.wg({2}) == RationalOfN(C(1), four_symbol_den()));

  Perm tau0 = standard_pairing(4);
  CHECK(t4.entry(tau0, tau0) == t4.wg({1, 1}));
  CHECK(t4.entry(class_representative(4, {2}), tau0) == t4.wg({2}));

  WeingartenTable t0 = weingarten_table(0);
  CHECK(t0.wg({}) == RationalOfN(1));
}

TEST_CASE("gram times weingarten is the identity, exactly in N") {
  for (int n : {2, 4, 6, 8}) {
    CAPTURE(n);
    WeingartenTable t = weingarten_table(n);
    CHECK(t.by_class.size() == integer_partitions(n / 2).size());
    std::vector<Perm> pairings = enumerate_pairings(n);
    int m = static_cast<int>(pairings.size());

    Poly den = C(1);
    for (const auto& [lam, v] : t.by_class) {
      Poly g = gcd(den, v.den());
      den = den.divexact(g) * v.den();
    }
    // Scaled inverse: wg_num[i][j] = Wg(i,j) * den, a polynomial.
    std::vector<std::vector<Poly>> wg_num(m, std::vector<Poly>(m));
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) {
        const RationalOfN& v = t.entry(pairings[i], pairings[j]);
        wg_num[i][j] = v.num() * den.divexact(v.den());
      }
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) {
        Poly acc = C(0);
        for (int k = 0; k < m; ++k)
          acc = acc + gram_entry(n, pairings[i], pairings[k]) * wg_num[k][j];
        CHECK(acc == (i == j ? den : C(0)));
      }
  }
}

TEST_CASE("fixed-N tables agree with the symbolic route on an integer grid") {
  for (int n : {2, 4, 6, 8}) {
    WeingartenTable sym = weingarten_table(n);
    for (int nn = 3; nn <= 10; ++nn) {
      CAPTURE(n);
      CAPTURE(nn);
      BigRat at(nn);
      bool pole = false;
      for (const auto& [lam, v] : sym.by_class)
        if (v.den().eval(at) == 0) pole = true;
      if (pole) {
        CHECK_THROWS_WITH_AS(weingarten_table_at(n, at),
                             doctest::Contains("singular"), SemanticError);
        continue;
      }
      WeingartenTable fix = weingarten_table_at(n, at);
      REQUIRE(fix.by_class.size() == sym.by_class.size());
      for (const auto& [lam, v] : sym.by_class)
        CHECK(fix.wg(lam) == of(v.eval(at)));
    }
  }
}

TEST_CASE("the eight-symbol gram matrix is singular at N = 3") {
  WeingartenTable sym = weingarten_table(8);
  bool pole = false;
  for (const auto& [lam, v] : sym.by_class)
    if (v.den().eval(BigRat(3)) == 0) pole = true;
  CHECK(pole);
  CHECK_THROWS_WITH_AS(weingarten_table_at(8, BigRat(3)),
                       doctest::Contains("N = 3"), SemanticError);
}

TEST_CASE("normalized weingarten values match the printed magnitudes") {
  WeingartenTable t2 = weingarten_table(2);
  CHECK(wg_normalized(t2, {1}, WgBase::SignedTwoN) == RationalOfN(-1));
  CHECK(wg_normalized(t2, {1}, WgBase::PositiveTwoN) == RationalOfN(1));
  // Orthogonal base = signed base times (-1)^(symbols/2): flips at 2 symbols.
  CHECK(wg_normalized(t2, {1}) == RationalOfN(1));

  WeingartenTable t4 = weingarten_table(4);
  // |wg([2])| = (2N)^2 / ((2N+1)(2N-2)); at N = 3 that is 36/28 = 9/7.
  RationalOfN w2 = wg_normalized(t4, {2}, WgBase::SignedTwoN);
  CHECK(w2 == -RationalOfN(C(4) * N() * N(), (C(2) * N() + C(1)) * (C(2) * N() - C(2))));
  CHECK(abs_rat(w2.eval(BigRat(3))) == BigRat(9, 7));
  CHECK(wg_normalized(t4, {2}) == w2);  // no flip at 4 symbols

  WeingartenTable f4 = weingarten_table_at(4, BigRat(3));
  CHECK(wg_normalized(f4, {2}) == of(BigRat(-9, 7)));
  CHECK(wg_normalized(f4, {2}, WgBase::PositiveTwoN) == of(BigRat(9, 7)));
  CHECK(wg_normalized(f4, {1, 1}).eval(BigRat(3)) ==
        wg_normalized(t4, {1, 1}).eval(BigRat(3)));

  WeingartenTable t6 = weingarten_table(6);
  CHECK(wg_normalized(t6, {1, 1, 1}) ==
        -wg_normalized(t6, {1, 1, 1}, WgBase::SignedTwoN));
}

TEST_CASE("normalized values approach the catalan limit at large N") {
  BigRat big(1000);
  BigRat tol(10, 1000);
  for (int n : {2, 4, 6}) {
    WeingartenTable t = weingarten_table(n);
    for (const auto& [lam, v] : t.by_class) {
      BigRat w = wg_normalized(t, lam).eval(big);
      BigRat c(catalan_limit(lam));
      CAPTURE(n);
      CHECK(abs_rat(abs_rat(w) - abs_rat(c)) <= tol);
      // The signed-base values carry an extra global (-1)^(n/2) relative to
      // the product-of-Catalans sign, so the actual sign is (-1)^(#parts).
      CHECK((w < 0) == (lam.size() % 2 == 1));
    }
  }
}

TEST_CASE("series partial sums converge to the table values") {
  Perm t2 = standard_pairing(2);
  for (int depth : {0, 3, 8})
    CHECK(weingarten_series_partial(2, t2, t2, depth, BigRat(5)) == BigRat(1, 10));

  // Depth 0 keeps only the length-zero path, present exactly on the diagonal.
  Perm t4 = standard_pairing(4);
  Perm s4 = class_representative(4, {2});
  CHECK(weingarten_series_partial(4, t4, t4, 0, BigRat(7)) == BigRat(1, 196));
  CHECK(weingarten_series_partial(4, t4, s4, 0, BigRat(7)) == BigRat(0));

  WeingartenTable f = weingarten_table_at(4, BigRat(100));
  for (const Perm& b : {t4, s4}) {
    BigRat exact = f.entry(t4, b).eval(BigRat(100));
    BigRat approx = weingarten_series_partial(4, t4, b, 6, BigRat(100));
    CHECK(abs_rat(exact - approx) * 1000000 <= abs_rat(exact));
  }

  WeingartenTable f6 = weingarten_table_at(6, BigRat(50));
  Perm t6 = standard_pairing(6);
  Perm s6 = class_representative(6, {3});
  BigRat exact = f6.entry(t6, s6).eval(BigRat(50));
  BigRat approx = weingarten_series_partial(6, t6, s6, 8, BigRat(50));
  CHECK(abs_rat(exact - approx) * 10000 <= abs_rat(exact));
}

TEST_CASE("caps and domain errors") {
  CHECK_THROWS_AS(weingarten_table(3), SemanticError);
  CHECK_THROWS_AS(weingarten_table(-2), SemanticError);
  CHECK_THROWS_AS(weingarten_table(10), CapError);
  CHECK_THROWS_AS(weingarten_table_at(12, BigRat(2)), CapError);
  CHECK_THROWS_AS(weingarten_table_at(4, BigRat(0)), SemanticError);
  CHECK_THROWS_WITH_AS(weingarten_table_at(4, BigRat(1)),
                       doctest::Contains("singular"), SemanticError);

  Perm t8 = standard_pairing(8);
  CHECK_THROWS_AS(weingarten_series_partial(8, t8, t8, 2, BigRat(5)), CapError);
  Perm t4 = standard_pairing(4);
  CHECK_THROWS_AS(weingarten_series_partial(4, t4, t4, 9, BigRat(5)), CapError);

  WeingartenTable t = weingarten_table(4);
  CHECK_THROWS_AS(t.wg({3}), SemanticError);
  CHECK_THROWS_AS(lambda_of_join(Perm(4), standard_pairing(4)), SemanticError);
}
