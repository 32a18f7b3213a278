#pragma once

#include <vector>

#include "quatrace/error.hpp"
#include "quatrace/rational_fn.hpp"

namespace quatrace {

// Complex scalar over an arbitrary component ring (std::complex is only
// specified for the floating-point types, and we also need exact rationals).
template <typename T>
struct Cplx {
  T re{}, im{};

  Cplx operator+(const Cplx& o) const { return {re + o.re, im + o.im}; }
  Cplx operator-(const Cplx& o) const { return {re - o.re, im - o.im}; }
  Cplx operator*(const Cplx& o) const {
    return {re * o.re - im * o.im, re * o.im + im * o.re};
  }
  Cplx& operator+=(const Cplx& o) { return *this = *this + o; }
  Cplx conj() const { return {re, T(0) - im}; }
  bool operator==(const Cplx& o) const { return re == o.re && im == o.im; }
};

// Quaternion a + bi + cj + dk with components in T (double for numerics,
// BigRat for the exact oracle paths).
template <typename T>
struct Quat {
  T a{}, b{}, c{}, d{};

  static Quat one() { return {T(1), T(0), T(0), T(0)}; }
  static Quat from_real(T x) { return {std::move(x), T(0), T(0), T(0)}; }

  T re() const { return a; }
  Quat conj() const { return {a, T(0) - b, T(0) - c, T(0) - d}; }
  T norm2() const { return a * a + b * b + c * c + d * d; }
  bool is_real() const { return b == T(0) && c == T(0) && d == T(0); }
  bool is_zero() const { return is_real() && a == T(0); }

  Quat operator+(const Quat& o) const {
    return {a + o.a, b + o.b, c + o.c, d + o.d};
  }
  Quat operator-(const Quat& o) const {
    return {a - o.a, b - o.b, c - o.c, d - o.d};
  }
  Quat operator-() const { return {T(0) - a, T(0) - b, T(0) - c, T(0) - d}; }
  Quat operator*(const Quat& o) const {
    return {a * o.a - b * o.b - c * o.c - d * o.d,
            a * o.b + b * o.a + c * o.d - d * o.c,
            a * o.c - b * o.d + c * o.a + d * o.b,
            a * o.d + b * o.c - c * o.b + d * o.a};
  }
  Quat operator*(const T& s) const { return {a * s, b * s, c * s, d * s}; }
  Quat& operator+=(const Quat& o) { return *this = *this + o; }
  Quat& operator*=(const Quat& o) { return *this = *this * o; }
  bool operator==(const Quat& o) const {
    return a == o.a && b == o.b && c == o.c && d == o.d;
  }

  // Entry of the 2x2 complex embedding [[a+bi, c+di], [-c+di, a-bi]],
  // rows and columns indexed by +1, -1.
  Cplx<T> embedding_entry(int h, int g) const {
    QT_CHECK((h == 1 || h == -1) && (g == 1 || g == -1), "spin index must be +-1");
    if (h == 1) return g == 1 ? Cplx<T>{a, b} : Cplx<T>{c, d};
    return g == 1 ? Cplx<T>{T(0) - c, d} : Cplx<T>{a, T(0) - b};
  }
};

template <typename T>
Quat<T> quat_from_embedding(const Cplx<T>& pp, const Cplx<T>& pm,
                            const Cplx<T>& mp, const Cplx<T>& mm) {
  Quat<T> q{pp.re, pp.im, pm.re, pm.im};
  bool consistent = mm == q.embedding_entry(-1, -1) && mp == q.embedding_entry(-1, 1);
  QT_CHECK(consistent, "2x2 block is not a quaternion embedding");
  return q;
}

// Square matrix of quaternions, 0-indexed.
template <typename T>
class QMatrix {
 public:
  QMatrix() = default;
  explicit QMatrix(int n) : n_(n), e_(static_cast<size_t>(n) * n) {}
  static QMatrix identity(int n) {
    QMatrix m(n);
    for (int i = 0; i < n; ++i) m.at(i, i) = Quat<T>::one();
    return m;
  }
  static QMatrix scalar(int n, const Quat<T>& q) {
    QMatrix m(n);
    for (int i = 0; i < n; ++i) m.at(i, i) = q;
    return m;
  }

  int size() const { return n_; }
  Quat<T>& at(int r, int c) { return e_[static_cast<size_t>(r) * n_ + c]; }
  const Quat<T>& at(int r, int c) const {
    return e_[static_cast<size_t>(r) * n_ + c];
  }

  QMatrix operator+(const QMatrix& o) const {
    QMatrix m(n_);
    for (size_t i = 0; i < e_.size(); ++i) m.e_[i] = e_[i] + o.e_[i];
    return m;
  }
  QMatrix operator-(const QMatrix& o) const {
    QMatrix m(n_);
    for (size_t i = 0; i < e_.size(); ++i) m.e_[i] = e_[i] - o.e_[i];
    return m;
  }
  QMatrix operator*(const QMatrix& o) const {
    QT_CHECK(n_ == o.n_, "matrix size mismatch");
    QMatrix m(n_);
    for (int r = 0; r < n_; ++r)
      for (int k = 0; k < n_; ++k) {
        const Quat<T>& x = at(r, k);
        if (x.is_zero()) continue;
        for (int c = 0; c < n_; ++c) m.at(r, c) += x * o.at(k, c);
      }
    return m;
  }
  bool operator==(const QMatrix& o) const { return n_ == o.n_ && e_ == o.e_; }

  // Quaternion scalars do not commute with entries; both orders are needed.
  QMatrix left_scaled(const Quat<T>& q) const {
    QMatrix m(n_);
    for (size_t i = 0; i < e_.size(); ++i) m.e_[i] = q * e_[i];
    return m;
  }
  QMatrix right_scaled(const Quat<T>& q) const {
    QMatrix m(n_);
    for (size_t i = 0; i < e_.size(); ++i) m.e_[i] = e_[i] * q;
    return m;
  }

 private:
  int n_ = 0;
  std::vector<Quat<T>> e_;
};

template <typename T>
QMatrix<T> adjoint(const QMatrix<T>& m) {
  QMatrix<T> r(m.size());
  for (int i = 0; i < m.size(); ++i)
    for (int j = 0; j < m.size(); ++j) r.at(i, j) = m.at(j, i).conj();
  return r;
}

// Entrywise real part (a real-valued matrix, kept in quaternion form).
template <typename T>
QMatrix<T> re(const QMatrix<T>& m) {
  QMatrix<T> r(m.size());
  for (int i = 0; i < m.size(); ++i)
    for (int j = 0; j < m.size(); ++j) r.at(i, j) = Quat<T>::from_real(m.at(i, j).a);
  return r;
}

// Normalized trace (sum of diagonal quaternions) / N.
template <typename T>
Quat<T> ntr(const QMatrix<T>& m) {
  QT_INPUT(m.size() > 0, "trace of an empty matrix");
  Quat<T> s{};
  for (int i = 0; i < m.size(); ++i) s += m.at(i, i);
  T n = T(m.size());
  return {s.a / n, s.b / n, s.c / n, s.d / n};
}

// 4-index entry access A[r, c; h, g] through the 2x2 embedding.
template <typename T>
Cplx<T> entry4(const QMatrix<T>& m, int r, int c, int h, int g) {
  return m.at(r, c).embedding_entry(h, g);
}

using Quaternion = Quat<double>;
using QuaternionMatrix = QMatrix<double>;
using QuatR = Quat<BigRat>;
using QMatrixR = QMatrix<BigRat>;

}  // namespace quatrace
