#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "quatrace/ensembles.hpp"
#include "quatrace/error.hpp"

using namespace quatrace;

namespace {

double max_entry_norm(const QuaternionMatrix& m) {
  double w = 0;
  for (int i = 0; i < m.size(); ++i)
    for (int j = 0; j < m.size(); ++j) w = std::max(w, std::sqrt(m.at(i, j).norm2()));
  return w;
}

struct MeanVar {
  double mean, var, se;
};

MeanVar stats(const std::vector<double>& xs) {
  double s = 0, s2 = 0;
  for (double x : xs) {
    s += x;
    s2 += x * x;
  }
  double n = static_cast<double>(xs.size());
  double mean = s / n;
  double var = s2 / n - mean * mean;
  return {mean, var, std::sqrt(var / n)};
}

}  // namespace

TEST_CASE("split rng is deterministic and stream-splittable") {
  SplitRng a(42, 7), b(42, 7), c(42, 8), d(43, 7);
  std::vector<double> va, vb, vc, vd;
  for (int i = 0; i < 64; ++i) {
    va.push_back(a.normal());
    vb.push_back(b.normal());
    vc.push_back(c.normal());
    vd.push_back(d.normal());
  }
  CHECK(va == vb);
  CHECK(va != vc);
  CHECK(va != vd);
  CHECK(vc != vd);
}

TEST_CASE("gaussian components have mean zero and variance one quarter") {
  const int kDraws = 200000;
  std::vector<double> comp;
  comp.reserve(4 * kDraws);
  for (int i = 0; i < kDraws; ++i) {
    SplitRng rng(2024, static_cast<std::uint64_t>(i));
    Quaternion q = sample_standard_quaternion(rng);
    comp.push_back(q.a);
    comp.push_back(q.b);
    comp.push_back(q.c);
    comp.push_back(q.d);
  }
  MeanVar mv = stats(comp);
  CHECK(std::abs(mv.mean) < 5 * mv.se);
  // SE of the sample variance of a normal is sigma^2 sqrt(2/n).
  double var_se = 0.25 * std::sqrt(2.0 / comp.size());
  CHECK(std::abs(mv.var - 0.25) < 5 * var_se);
}

TEST_CASE("gse draws are exactly self-adjoint") {
  for (int n : {1, 2, 5}) {
    SplitRng rng(9, n);
    QuaternionMatrix t = sample_gse(n, rng);
    CHECK(adjoint(t) == t);
  }
}

TEST_CASE("ginibre second moment matches its normalization") {
  // E[Re tr(Z Z*)] = 1 for every N: each of the N^2 entries contributes
  // E[|z|^2] = 1/N, and the normalized trace divides by N.
  const int kDraws = 20000;
  for (int n : {1, 3}) {
    std::vector<double> xs;
    xs.reserve(kDraws);
    for (int i = 0; i < kDraws; ++i) {
      SplitRng rng(5150, static_cast<std::uint64_t>(i));
      QuaternionMatrix z = sample_ginibre(n, rng);
      xs.push_back(ntr(z * adjoint(z)).a);
    }
    MeanVar mv = stats(xs);
    CHECK(std::abs(mv.mean - 1.0) < 5 * mv.se);
  }
}

TEST_CASE("gse second moment matches one minus one over twice the dimension") {
  const int kDraws = 20000;
  for (int n : {1, 2, 4}) {
    std::vector<double> xs;
    xs.reserve(kDraws);
    for (int i = 0; i < kDraws; ++i) {
      SplitRng rng(61, static_cast<std::uint64_t>(i) * 2 + n);
      QuaternionMatrix t = sample_gse(n, rng);
      xs.push_back(ntr(t * t).a);
    }
    MeanVar mv = stats(xs);
    double expected = 1.0 - 1.0 / (2.0 * n);
    CHECK(std::abs(mv.mean - expected) < 5 * mv.se);
  }
}

TEST_CASE("wishart mean trace is M over N times the weight trace") {
  const int kDraws = 20000;
  QuaternionMatrix d(2);
  d.at(0, 0) = Quaternion{2, 0, 0, 0};
  d.at(1, 1) = Quaternion{0.5, 1, 0, 0};  // non-real diagonal entry
  d.at(0, 1) = Quaternion{0, 0, 3, 0};    // ignored by the mean trace
  // E[Re tr W] = (M/N) Re tr_M D = (2/3) * (2 + 0.5)/2 = 5/6.
  std::vector<double> xs;
  xs.reserve(kDraws);
  for (int i = 0; i < kDraws; ++i) {
    SplitRng rng(777, static_cast<std::uint64_t>(i));
    QuaternionMatrix w = sample_wishart(3, 2, d, rng);
    xs.push_back(ntr(w).a);
  }
  MeanVar mv = stats(xs);
  CHECK(std::abs(mv.mean - 5.0 / 6.0) < 5 * mv.se);
}

TEST_CASE("wishart with self-adjoint weight is self-adjoint") {
  QuaternionMatrix d(2);
  d.at(0, 0) = Quaternion{1, 0, 0, 0};
  d.at(1, 1) = Quaternion{3, 0, 0, 0};
  d.at(0, 1) = Quaternion{0, 1, 0, 0};
  d.at(1, 0) = Quaternion{0, -1, 0, 0};
  REQUIRE(adjoint(d) == d);
  SplitRng rng(31337, 0);
  QuaternionMatrix w = sample_wishart(3, 2, d, rng);
  CHECK(max_entry_norm(w - adjoint(w)) < 1e-12);
}

TEST_CASE("haar draws are symplectic to rounding accuracy") {
  for (int n : {1, 2, 6}) {
    for (int i = 0; i < 20; ++i) {
      SplitRng rng(12, static_cast<std::uint64_t>(100 * n + i));
      QuaternionMatrix u = sample_haar(n, rng);
      CHECK(symplectic_residual(u) < 1e-10);
    }
  }
}

TEST_CASE("haar left invariance under a fixed symplectic factor") {
  // U and VU agree in distribution for fixed symplectic V; compare the mean
  // of Re of the (0,0) entry against the rotated ensemble.
  const int kDraws = 20000;
  SplitRng vr(314, 0);
  QuaternionMatrix v = sample_haar(3, vr);
  std::vector<double> plain, rotated;
  plain.reserve(kDraws);
  rotated.reserve(kDraws);
  for (int i = 0; i < kDraws; ++i) {
    SplitRng rng(271828, static_cast<std::uint64_t>(i));
    QuaternionMatrix u = sample_haar(3, rng);
    plain.push_back(ntr(u).a);
    rotated.push_back(ntr(v * u).a);
  }
  MeanVar a = stats(plain), b = stats(rotated);
  CHECK(std::abs(a.mean) < 5 * a.se);
  CHECK(std::abs(b.mean) < 5 * b.se);
}

TEST_CASE("manifest round trip and defaults") {
  auto j = nlohmann::json::parse(R"([
    {"color": 1, "kind": "gse"},
    {"color": 2, "kind": "wishart", "M": 2},
    {"color": 3, "kind": "wishart", "M": 1, "D": [[[1, "1/2", 0, -2]]]},
    {"color": 4, "kind": "fixed", "D": [[[0, 0, 1, 0]]]},
    {"color": 5, "kind": "haar"},
    {"color": 6, "kind": "ginibre"},
    {"color": 7, "kind": "identity"}
  ])");
  auto m = parse_manifest(j);
  REQUIRE(m.size() == 7);
  CHECK(m.at(1).kind == EnsembleKind::kGSE);
  CHECK(m.at(2).kind == EnsembleKind::kWishart);
  CHECK(m.at(2).M == 2);
  CHECK(m.at(2).D == QMatrixR::identity(2));
  CHECK(m.at(3).D.at(0, 0) == QuatR{BigRat(1), BigRat(1, 2), BigRat(0), BigRat(-2)});
  CHECK(m.at(4).kind == EnsembleKind::kFixed);
  CHECK(m.at(4).D.at(0, 0) == QuatR{BigRat(0), BigRat(0), BigRat(1), BigRat(0)});
  CHECK(is_gaussian(m.at(2).kind));
  CHECK(!is_gaussian(m.at(5).kind));
  CHECK(is_deterministic(m.at(7).kind));

  auto round = parse_manifest(manifest_to_json(m));
  REQUIRE(round.size() == m.size());
  for (const auto& [color, spec] : m) {
    CHECK(round.at(color).kind == spec.kind);
    CHECK(round.at(color).M == spec.M);
    CHECK(round.at(color).D == spec.D);
  }
}

TEST_CASE("manifest rejects malformed input") {
  auto parse = [](const char* text) { return parse_manifest(nlohmann::json::parse(text)); };
  CHECK_THROWS_AS(parse(R"({"color": 1})"), ParseError);
  CHECK_THROWS_AS(parse(R"([{"kind": "gse"}])"), ParseError);
  CHECK_THROWS_AS(parse(R"([{"color": 0, "kind": "gse"}])"), ParseError);
  CHECK_THROWS_AS(parse(R"([{"color": 1, "kind": "gue"}])"), ParseError);
  CHECK_THROWS_AS(parse(R"([{"color": 1, "kind": "gse"}, {"color": 1, "kind": "gse"}])"),
                  ParseError);
  CHECK_THROWS_AS(parse(R"([{"color": 1, "kind": "wishart"}])"), ParseError);
  CHECK_THROWS_AS(parse(R"([{"color": 1, "kind": "wishart", "M": 0}])"), ParseError);
  CHECK_THROWS_AS(parse(R"([{"color": 1, "kind": "wishart", "M": 2, "D": [[[1,0,0,0]]]}])"),
                  ParseError);
  CHECK_THROWS_AS(parse(R"([{"color": 1, "kind": "fixed"}])"), ParseError);
  CHECK_THROWS_AS(parse(R"([{"color": 1, "kind": "fixed", "D": "identity"}])"), ParseError);
  CHECK_THROWS_AS(parse(R"([{"color": 1, "kind": "gse", "M": 3}])"), ParseError);
  CHECK_THROWS_AS(parse(R"([{"color": 1, "kind": "wishart", "M": 1, "D": [[[1,0,0]]]}])"),
                  ParseError);
  CHECK_THROWS_AS(parse(R"([{"color": 1, "kind": "wishart", "M": 1, "D": [[["1/0",0,0,0]]]}])"),
                  ParseError);
}

TEST_CASE("sampler input contracts") {
  SplitRng rng(1, 1);
  CHECK_THROWS_AS(sample_ginibre(0, rng), SemanticError);
  CHECK_THROWS_AS(sample_wishart(2, 2, QuaternionMatrix::identity(3), rng), SemanticError);
  EnsembleSpec fixed;
  fixed.kind = EnsembleKind::kFixed;
  fixed.D = QMatrixR::identity(2);
  CHECK_THROWS_AS(sample_ensemble(fixed, 3, rng), SemanticError);
  CHECK(sample_ensemble(fixed, 2, rng) == QuaternionMatrix::identity(2));
}
