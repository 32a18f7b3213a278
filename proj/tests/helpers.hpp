#pragma once

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "quatrace/bracket.hpp"
#include "quatrace/contraction.hpp"
#include "quatrace/quaternion.hpp"

namespace quatrace::testing {

template <typename T>
Quat<T> random_quat(std::mt19937& rng, int lo = -2, int hi = 2) {
  std::uniform_int_distribution<int> u(lo, hi);
  return {T(u(rng)), T(u(rng)), T(u(rng)), T(u(rng))};
}

template <typename T>
QMatrix<T> random_qmatrix(std::mt19937& rng, int n, int lo = -2, int hi = 2) {
  QMatrix<T> m(n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) m.at(r, c) = random_quat<T>(rng, lo, hi);
  return m;
}

template <typename T>
std::vector<QMatrix<T>> random_qmatrices(std::mt19937& rng, int count, int n,
                                         int lo = -2, int hi = 2) {
  std::vector<QMatrix<T>> v;
  for (int i = 0; i < count; ++i) v.push_back(random_qmatrix<T>(rng, n, lo, hi));
  return v;
}

// Random legal diagram on n symbols: shuffled signed layout plus brackets
// kept only when they still nest.
inline BracketDiagram random_diagram(std::mt19937& rng, int n,
                                     int bracket_attempts = -1) {
  BracketDiagram d;
  d.symbols = {kInf};
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i + 1;
  std::shuffle(order.begin(), order.end(), rng);
  std::uniform_int_distribution<int> coin(0, 1);
  for (int k : order) d.symbols.push_back(coin(rng) ? k : -k);
  int attempts = bracket_attempts < 0 ? n + 2 : bracket_attempts;
  std::uniform_int_distribution<int> pos(1, n);
  for (int t = 0; t < attempts; ++t) {
    int a = pos(rng), b = pos(rng);
    Bracket br{std::min(a, b), std::max(a, b), coin(rng) == 1};
    d.brackets.push_back(br);
    try {
      d.validate();
    } catch (const SemanticError&) {
      d.brackets.pop_back();
    }
  }
  return d;
}

inline double quat_dist(const Quaternion& x, const Quaternion& y) {
  return std::max(std::max(std::fabs(x.a - y.a), std::fabs(x.b - y.b)),
                  std::max(std::fabs(x.c - y.c), std::fabs(x.d - y.d)));
}

inline double value_dist(const Value<double>& x, const Value<double>& y) {
  if (x.kind != y.kind) return 1e300;
  switch (x.kind) {
    case ValueKind::kScalar:
      return std::fabs(x.scalar - y.scalar);
    case ValueKind::kQuaternion:
      return quat_dist(x.quat, y.quat);
    case ValueKind::kMatrix: {
      if (x.matrix.size() != y.matrix.size()) return 1e300;
      double m = 0;
      for (int r = 0; r < x.matrix.size(); ++r)
        for (int c = 0; c < x.matrix.size(); ++c)
          m = std::max(m, quat_dist(x.matrix.at(r, c), y.matrix.at(r, c)));
      return m;
    }
  }
  return 1e300;
}

template <typename T>
bool value_equal(const Value<T>& x, const Value<T>& y) {
  if (x.kind != y.kind) return false;
  switch (x.kind) {
    case ValueKind::kScalar:
      return x.scalar == y.scalar;
    case ValueKind::kQuaternion:
      return x.quat == y.quat;
    case ValueKind::kMatrix:
      return x.matrix == y.matrix;
  }
  return false;
}

}  // namespace quatrace::testing
