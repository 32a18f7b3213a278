#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <string>
#include <vector>

namespace quatrace {

using BigInt = boost::multiprecision::mpz_int;
using BigRat = boost::multiprecision::mpq_rational;

// Polynomial in one variable N with arbitrary-precision integer
// coefficients, stored in ascending order (coeffs_[i] multiplies N^i).
class Poly {
 public:
  Poly() = default;
  explicit Poly(BigInt constant);
  explicit Poly(long constant) : Poly(BigInt(constant)) {}
  static Poly variable();                       // N
  static Poly from_coeffs(std::vector<BigInt> ascending);

  bool is_zero() const { return coeffs_.empty(); }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }  // -1 for 0
  const BigInt& coeff(int i) const;
  const BigInt& leading() const;

  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator-() const;
  Poly operator*(const Poly& o) const;
  bool operator==(const Poly& o) const { return coeffs_ == o.coeffs_; }
  bool operator!=(const Poly& o) const { return !(*this == o); }

  // Quotient of an exact division; throws InternalError on a nonzero
  // remainder.
  Poly divexact(const Poly& d) const;

  BigInt content() const;                       // gcd of coefficients, >= 0 (0 for 0)
  Poly primitive() const;                       // this / content, leading coeff > 0
  int sign() const;                             // sign of leading coefficient

  BigRat eval(const BigRat& n) const;
  std::string to_string(const std::string& var = "N") const;

 private:
  void trim();
  std::vector<BigInt> coeffs_;
};

Poly gcd(const Poly& a, const Poly& b);         // primitive gcd, leading coeff > 0

// Rational function num/den in N, kept canonical: den has positive
// leading coefficient, gcd(num, den) = 1, and both are content-free as a
// pair (the shared integer content is cancelled).
class RationalOfN {
 public:
  RationalOfN() : num_(BigInt(0)), den_(BigInt(1)) {}
  explicit RationalOfN(long value) : num_(BigInt(value)), den_(BigInt(1)) {}
  explicit RationalOfN(BigInt value) : num_(Poly(std::move(value))), den_(BigInt(1)) {}
  explicit RationalOfN(Poly p) : num_(std::move(p)), den_(BigInt(1)) {}
  RationalOfN(Poly num, Poly den);

  static RationalOfN variable() { return RationalOfN(Poly::variable()); }

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }

  RationalOfN operator+(const RationalOfN& o) const;
  RationalOfN operator-(const RationalOfN& o) const;
  RationalOfN operator-() const;
  RationalOfN operator*(const RationalOfN& o) const;
  RationalOfN operator/(const RationalOfN& o) const;
  RationalOfN& operator+=(const RationalOfN& o) { return *this = *this + o; }
  RationalOfN& operator-=(const RationalOfN& o) { return *this = *this - o; }
  RationalOfN& operator*=(const RationalOfN& o) { return *this = *this * o; }
  RationalOfN& operator/=(const RationalOfN& o) { return *this = *this / o; }
  bool operator==(const RationalOfN& o) const;
  bool operator!=(const RationalOfN& o) const { return !(*this == o); }

  RationalOfN pow(long e) const;                // e may be negative

  // Evaluates at N = n; throws SemanticError when the denominator
  // vanishes there.
  BigRat eval(const BigRat& n) const;

  std::string to_string(const std::string& var = "N") const;

 private:
  void normalize();
  Poly num_, den_;
};

// Solves A x = b exactly over polynomials in N by fraction-free (Bareiss)
// elimination; entries of the result are rational functions of N.  Throws
// SemanticError if A is singular as a matrix over the function field.
std::vector<RationalOfN> solve_linear_system(
    std::vector<std::vector<Poly>> a, std::vector<Poly> b);

}  // namespace quatrace
