#pragma once

// Exact integer/rational polynomial machinery shared by the algebraic layer.

#include <gmpxx.h>

#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

namespace gasket {

using BigInt = mpz_class;
using Rational = mpq_class;

/// Parses "p/q", "p" or a decimal literal such as "0.6478" into an exact rational.
Rational parse_rational(const std::string& text);

std::string to_string(const Rational& value);

/// Integer polynomial, coefficients stored in ascending degree and trimmed so
/// that the leading coefficient is nonzero (the zero polynomial is empty).
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<BigInt> coeffs);
  Polynomial(std::initializer_list<long> coeffs);

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  const std::vector<BigInt>& coeffs() const { return coeffs_; }
  const BigInt& coeff(int k) const { return coeffs_.at(static_cast<std::size_t>(k)); }
  const BigInt& leading() const { return coeffs_.back(); }
  bool is_monic() const { return !coeffs_.empty() && coeffs_.back() == 1; }

  Rational operator()(const Rational& x) const;
  double operator()(double x) const;
  int sign_at(const Rational& x) const;

  Polynomial derivative() const;
  std::string to_string(char var = 'x') const;

  friend bool operator==(const Polynomial&, const Polynomial&) = default;

 private:
  std::vector<BigInt> coeffs_;
};

/// Polynomial over Q, ascending degree, trimmed.
class RationalPoly {
 public:
  RationalPoly() = default;
  explicit RationalPoly(std::vector<Rational> coeffs);
  explicit RationalPoly(const Polynomial& p);

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  const std::vector<Rational>& coeffs() const { return coeffs_; }
  const Rational& leading() const { return coeffs_.back(); }

  Rational operator()(const Rational& x) const;
  RationalPoly derivative() const;
  RationalPoly monic() const;

  friend RationalPoly operator-(const RationalPoly& a, const RationalPoly& b);
  friend RationalPoly operator*(const RationalPoly& a, const RationalPoly& b);
  friend bool operator==(const RationalPoly&, const RationalPoly&) = default;

 private:
  void trim();
  std::vector<Rational> coeffs_;
};

/// Euclidean division; throws DomainError on division by zero.
std::pair<RationalPoly, RationalPoly> divmod(const RationalPoly& a, const RationalPoly& b);
RationalPoly remainder(const RationalPoly& a, const RationalPoly& b);
/// Monic greatest common divisor (zero if both inputs are zero).
RationalPoly gcd(RationalPoly a, RationalPoly b);

/// Closed rational interval used for certified polynomial evaluation.
struct RationalInterval {
  Rational lo;
  Rational hi;

  bool contains_zero() const { return lo <= 0 && hi >= 0; }
};

RationalInterval evaluate(const RationalPoly& p, const RationalInterval& x);

/// Sturm chain of the square-free part of a polynomial.
class SturmSequence {
 public:
  explicit SturmSequence(const RationalPoly& p);

  /// Number of distinct real roots in the half-open interval (lo, hi].
  int count_roots(const Rational& lo, const Rational& hi) const;

 private:
  int variations(const Rational& x) const;
  std::vector<RationalPoly> chain_;
};

}  // namespace gasket
