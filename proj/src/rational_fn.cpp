#include "quatrace/rational_fn.hpp"

#include <algorithm>
#include <sstream>

#include "quatrace/error.hpp"

namespace quatrace {

Poly::Poly(BigInt constant) {
  if (constant != 0) coeffs_.push_back(std::move(constant));
}

Poly Poly::variable() {
  Poly p;
  p.coeffs_ = {BigInt(0), BigInt(1)};
  return p;
}

Poly Poly::from_coeffs(std::vector<BigInt> ascending) {
  Poly p;
  p.coeffs_ = std::move(ascending);
  p.trim();
  return p;
}

void Poly::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

const BigInt& Poly::coeff(int i) const {
  static const BigInt zero(0);
  if (i < 0 || i >= static_cast<int>(coeffs_.size())) return zero;
  return coeffs_[i];
}

const BigInt& Poly::leading() const {
  QT_CHECK(!coeffs_.empty(), "leading coefficient of the zero polynomial");
  return coeffs_.back();
}

Poly Poly::operator+(const Poly& o) const {
  Poly r;
  r.coeffs_.resize(std::max(coeffs_.size(), o.coeffs_.size()), BigInt(0));
  for (size_t i = 0; i < coeffs_.size(); ++i) r.coeffs_[i] += coeffs_[i];
  for (size_t i = 0; i < o.coeffs_.size(); ++i) r.coeffs_[i] += o.coeffs_[i];
  r.trim();
  return r;
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

Poly Poly::operator*(const Poly& o) const {
  if (is_zero() || o.is_zero()) return Poly();
  Poly r;
  r.coeffs_.assign(coeffs_.size() + o.coeffs_.size() - 1, BigInt(0));
  for (size_t i = 0; i < coeffs_.size(); ++i)
    for (size_t j = 0; j < o.coeffs_.size(); ++j)
      r.coeffs_[i + j] += coeffs_[i] * o.coeffs_[j];
  r.trim();
  return r;
}

Poly Poly::divexact(const Poly& d) const {
  QT_CHECK(!d.is_zero(), "polynomial division by zero");
  if (is_zero()) return Poly();
  QT_CHECK(degree() >= d.degree(), "divexact with nonzero remainder (degree)");
  Poly rem = *this;
  std::vector<BigInt> q(degree() - d.degree() + 1, BigInt(0));
  for (int k = degree() - d.degree(); rem.degree() >= d.degree(); ) {
    k = rem.degree() - d.degree();
    BigInt c = rem.coeffs_.back() / d.leading();
    QT_CHECK(c * d.leading() == rem.coeffs_.back(),
             "divexact with nonzero remainder (leading)");
    q[k] = c;
    for (size_t i = 0; i < d.coeffs_.size(); ++i)
      rem.coeffs_[k + i] -= c * d.coeffs_[i];
    rem.trim();
    if (rem.is_zero()) break;
  }
  QT_CHECK(rem.is_zero(), "divexact with nonzero remainder");
  return Poly::from_coeffs(std::move(q));
}

BigInt Poly::content() const {
  BigInt g(0);
  for (const auto& c : coeffs_) g = boost::multiprecision::gcd(g, c);
  return g < 0 ? BigInt(-g) : g;
}

Poly Poly::primitive() const {
  if (is_zero()) return Poly();
  BigInt c = content();
  if (leading() < 0) c = -c;
  Poly r = *this;
  for (auto& x : r.coeffs_) x /= c;
  return r;
}

int Poly::sign() const {
  if (is_zero()) return 0;
  return leading() > 0 ? 1 : -1;
}

BigRat Poly::eval(const BigRat& n) const {
  BigRat acc(0);
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
    acc = acc * n + BigRat(*it);
  return acc;
}

std::string Poly::to_string(const std::string& var) const {
  if (is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    const BigInt& c = coeffs_[i];
    if (c == 0) continue;
    BigInt a = c < 0 ? BigInt(-c) : c;
    if (first) {
      if (c < 0) out << "-";
      first = false;
    } else {
      out << (c < 0 ? " - " : " + ");
    }
    bool unit = (a == 1) && i > 0;
    if (!unit) out << a.str();
    if (i > 0) {
      if (!unit) out << "*";
      out << var;
      if (i > 1) out << "^" << i;
    }
  }
  return out.str();
}

// Primitive polynomial gcd via the subresultant-style Euclid on
// pseudo-remainders; fine at the sizes that arise here.
Poly gcd(const Poly& a, const Poly& b) {
  Poly x = a.primitive(), y = b.primitive();
  if (x.is_zero()) return y;
  if (y.is_zero()) return x;
  while (!y.is_zero()) {
    // pseudo-remainder of x by y
    Poly rem = x;
    int shift = rem.degree() - y.degree();
    if (shift < 0) {
      std::swap(x, y);
      continue;
    }
    // multiply x by lc(y)^(shift+1) so the division below stays integral
    Poly scale(BigInt(1));
    for (int i = 0; i <= shift; ++i) scale = scale * Poly(y.leading());
    rem = rem * scale;
    while (!rem.is_zero() && rem.degree() >= y.degree()) {
      int k = rem.degree() - y.degree();
      BigInt c = rem.leading() / y.leading();
      QT_CHECK(c * y.leading() == rem.leading(), "pseudo-division not integral");
      std::vector<BigInt> sub(k + 1, BigInt(0));
      sub[k] = c;
      rem = rem - Poly::from_coeffs(std::move(sub)) * y;
    }
    x = y;
    y = rem.primitive();
  }
  return x.primitive();
}

RationalOfN::RationalOfN(Poly num, Poly den)
    : num_(std::move(num)), den_(std::move(den)) {
  QT_CHECK(!den_.is_zero(), "rational function with zero denominator");
  normalize();
}

void RationalOfN::normalize() {
  if (num_.is_zero()) {
    den_ = Poly(BigInt(1));
    return;
  }
  Poly g = gcd(num_, den_);
  if (g.degree() > 0 || g.leading() != 1) {
    num_ = num_.divexact(g);
    den_ = den_.divexact(g);
  }
  BigInt c = boost::multiprecision::gcd(num_.content(), den_.content());
  if (den_.sign() < 0) c = -c;
  if (c != 1) {
    num_ = num_.divexact(Poly(c));
    den_ = den_.divexact(Poly(c));
  }
}

RationalOfN RationalOfN::operator+(const RationalOfN& o) const {
  return RationalOfN(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

RationalOfN RationalOfN::operator-(const RationalOfN& o) const {
  return RationalOfN(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
}

RationalOfN RationalOfN::operator-() const {
  RationalOfN r = *this;
  r.num_ = -r.num_;
  return r;
}

RationalOfN RationalOfN::operator*(const RationalOfN& o) const {
  return RationalOfN(num_ * o.num_, den_ * o.den_);
}

RationalOfN RationalOfN::operator/(const RationalOfN& o) const {
  QT_INPUT(!o.is_zero(), "division by the zero rational function");
  return RationalOfN(num_ * o.den_, den_ * o.num_);
}

bool RationalOfN::operator==(const RationalOfN& o) const {
  return num_ == o.num_ && den_ == o.den_;
}

RationalOfN RationalOfN::pow(long e) const {
  if (e == 0) return RationalOfN(1);
  RationalOfN base = *this;
  if (e < 0) {
    base = RationalOfN(1) / base;
    e = -e;
  }
  RationalOfN acc(1);
  while (e > 0) {
    if (e & 1) acc *= base;
    base *= base;
    e >>= 1;
  }
  return acc;
}

BigRat RationalOfN::eval(const BigRat& n) const {
  BigRat d = den_.eval(n);
  QT_INPUT(d != 0, "rational function has a pole at the requested N");
  return num_.eval(n) / d;
}

std::string RationalOfN::to_string(const std::string& var) const {
  if (den_.degree() == 0 && den_.leading() == 1) return num_.to_string(var);
  std::ostringstream out;
  bool wrap_num = num_.degree() > 0;
  if (wrap_num) out << "(";
  out << num_.to_string(var);
  if (wrap_num) out << ")";
  out << "/(" << den_.to_string(var) << ")";
  return out.str();
}

std::vector<RationalOfN> solve_linear_system(
    std::vector<std::vector<Poly>> a, std::vector<Poly> b) {
  const size_t n = a.size();
  QT_CHECK(b.size() == n, "linear system shape mismatch");
  for (const auto& row : a)
    QT_CHECK(row.size() == n, "linear system must be square");

  // Fraction-free Gaussian elimination: after step k every entry is the
  // determinant of a minor of the original augmented matrix, and the
  // previous pivot divides exactly.
  std::vector<size_t> perm(n);
  for (size_t i = 0; i < n; ++i) perm[i] = i;
  Poly prev(BigInt(1));
  for (size_t k = 0; k + 1 < n; ++k) {
    size_t piv = k;
    while (piv < n && a[perm[piv]][k].is_zero()) ++piv;
    QT_INPUT(piv < n, "singular linear system");
    std::swap(perm[k], perm[piv]);
    const auto& pr = a[perm[k]];
    for (size_t i = k + 1; i < n; ++i) {
      auto& ri = a[perm[i]];
      for (size_t j = k + 1; j < n; ++j)
        ri[j] = (pr[k] * ri[j] - ri[k] * pr[j]).divexact(prev);
      b[perm[i]] = (pr[k] * b[perm[i]] - ri[k] * b[perm[k]]).divexact(prev);
      ri[k] = Poly();
    }
    prev = pr[k];
  }
  QT_INPUT(!a[perm[n - 1]][n - 1].is_zero(), "singular linear system");

  std::vector<RationalOfN> x(n);
  for (size_t ii = n; ii-- > 0;) {
    RationalOfN acc{b[perm[ii]]};
    for (size_t j = ii + 1; j < n; ++j)
      acc -= RationalOfN(a[perm[ii]][j]) * x[j];
    x[ii] = acc / RationalOfN(a[perm[ii]][ii]);
  }
  return x;
}

}  // namespace quatrace
