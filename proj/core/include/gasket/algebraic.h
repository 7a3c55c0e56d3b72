#pragma once

// Exact real constants (roots of integer polynomials isolated by rational
// intervals), exact sign decisions for integer combinations of powers of a
// fixed parameter, and the closed-form dimension formulas built on them.

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gasket/exact.h"

namespace gasket {

/// A real number given as the unique root of an integer polynomial inside an
/// open rational interval (lo, hi).
class AlgebraicNumber {
 public:
  /// Validates the isolating interval with a Sturm count and a sign change.
  /// Throws NoRoot / MultipleRoots when the bracket is not isolating.
  AlgebraicNumber(Polynomial poly, Rational lo, Rational hi);

  const Polynomial& polynomial() const { return poly_; }
  const Rational& lower() const { return lo_; }
  const Rational& upper() const { return hi_; }
  Rational width() const { return hi_ - lo_; }
  Rational midpoint() const { return (lo_ + hi_) / 2; }
  double to_double() const;

  /// Copy whose interval has width <= tol. The previous intervals are kept in
  /// refinements(), newest last; every entry nests inside its predecessor.
  AlgebraicNumber refined(const Rational& tol) const;
  const std::vector<std::pair<Rational, Rational>>& refinements() const { return history_; }

  /// The exact value when the defining polynomial is linear.
  std::optional<Rational> as_rational() const;

  /// One bisection step; keeps the half that still isolates the root.
  void bisect();

 private:
  AlgebraicNumber() = default;
  Polynomial poly_;
  Rational lo_;
  Rational hi_;
  int sign_lo_ = 0;
  std::vector<std::pair<Rational, Rational>> history_;
};

/// Bisects the bracket until its width is at most tol.
AlgebraicNumber isolate_root(const Polynomial& poly, const Rational& lo, const Rational& hi,
                             const Rational& tol);

/// Smallest root of poly inside (lo, hi), isolated to width <= tol.
AlgebraicNumber smallest_root(const Polynomial& poly, const Rational& lo, const Rational& hi,
                              const Rational& tol);

std::strong_ordering compare(const AlgebraicNumber& a, const AlgebraicNumber& b);
std::strong_ordering compare(const AlgebraicNumber& a, const Rational& b);

/// Default display tolerance for isolated constants: interval width <= 1e-15.
Rational default_tolerance();

/// Integer combination sum_k c_k * lambda^k of powers of a parameter.
/// Coefficients are stored ascending and trimmed; arithmetic is overflow
/// checked (ResourceLimit on overflow).
class LinearCombination {
 public:
  LinearCombination() = default;
  explicit LinearCombination(std::vector<std::int64_t> coeffs);

  static LinearCombination constant(std::int64_t c);
  /// c * lambda^k
  static LinearCombination monomial(std::int64_t c, int k);
  /// 1 - lambda
  static LinearCombination one_minus_lambda();

  const std::vector<std::int64_t>& coeffs() const { return coeffs_; }
  std::int64_t coeff(int k) const;
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }

  LinearCombination& operator+=(const LinearCombination& other);
  LinearCombination& operator-=(const LinearCombination& other);
  LinearCombination operator-() const;
  friend LinearCombination operator+(LinearCombination a, const LinearCombination& b) { return a += b; }
  friend LinearCombination operator-(LinearCombination a, const LinearCombination& b) { return a -= b; }
  friend LinearCombination operator*(const LinearCombination& a, const LinearCombination& b);
  LinearCombination scaled(std::int64_t factor) const;
  /// Multiplication by lambda^k.
  LinearCombination shifted(int k) const;

  double evaluate(double lambda) const;
  std::string to_string() const;

  friend bool operator==(const LinearCombination&, const LinearCombination&) = default;

 private:
  void trim();
  std::vector<std::int64_t> coeffs_;
};

/// The exact value of the contraction ratio (or of a base theta): either a
/// rational or an AlgebraicNumber. Immutable and cheap to copy; safe to share
/// between threads.
class Parameter {
 public:
  static Parameter rational(const Rational& value);
  static Parameter algebraic(const AlgebraicNumber& value, std::string label = {});

  bool is_rational() const;
  const Rational& rational_value() const;
  const AlgebraicNumber& algebraic_value() const;
  /// The defining polynomial (q x - p for a rational p/q).
  const Polynomial& polynomial() const;

  double value() const;
  /// Human-readable token, e.g. "omega:2" or "59/100".
  const std::string& label() const;

  /// Exact sign of sum_k c_k lambda^k. A floating-point filter with a
  /// certified error bound answers most queries; otherwise the combination
  /// is reduced modulo the defining polynomial (zero vector => 0) and its
  /// value is bracketed by interval refinement, at most 256 bisections.
  int sign(const LinearCombination& c) const;
  int sign(std::span<const std::int64_t> coeffs) const;

  /// Exact sign of num(lambda) - (p/q) for rational p/q.
  int sign_minus_rational(const LinearCombination& num, const Rational& r) const;

  /// Canonical byte string of the value of c: equal keys iff equal values.
  std::string key(const LinearCombination& c) const;

  /// Remainder of c modulo the defining polynomial.
  RationalPoly reduce(const LinearCombination& c) const;

  /// Number of bisection rounds allowed before PrecisionExhausted.
  static constexpr int kRefinementCap = 256;

 private:
  struct Impl;
  explicit Parameter(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<const Impl> impl_;
};

std::strong_ordering compare(const LinearCombination& a, const LinearCombination& b, const Parameter& lambda);

// --- named constants -------------------------------------------------------

/// omega_m: the root of x^m + ... + x = 1 in (1/2, 2/3). DomainError for m < 2.
AlgebraicNumber multinacci(int m, const Rational& tol = default_tolerance());
/// Smallest positive root of d(d+1)/2 t^{m+1} - (d+1) t + 1.
AlgebraicNumber tau(int m, int d = 2, const Rational& tol = default_tolerance());
/// Smaller positive root of 2t^m - 3t + 1 (the root t = 1 is divided out).
AlgebraicNumber sigma(int m, const Rational& tol = default_tolerance());
/// Root of 2x^3 - 2x^2 + 2x - 1 near 0.6478.
AlgebraicNumber lambda_star(const Rational& tol = default_tolerance());
/// 1/omega_m, the root of x^m - x^{m-1} - ... - 1 in (1, 2).
AlgebraicNumber inverse_multinacci(int m, const Rational& tol = default_tolerance());

Parameter multinacci_parameter(int m);
Parameter lambda_star_parameter();

// --- dimension formulas ----------------------------------------------------

/// log tau_{m,d} / log omega_m.
double gasket_dimension(int m, int d = 2);
/// log sigma_m / log omega_m.
double uniqueness_dimension(int m);
/// log(d+1) / -log(lambda), valid for 0 < lambda <= 1/2.
double sierpinski_dimension(int d, double lambda);

}  // namespace gasket
