#include "gasket/algebraic.h"

#include <cmath>
#include <cstring>
#include <limits>
#include <sstream>

#include "gasket/error.h"

namespace gasket {

namespace {

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw ResourceLimit("integer overflow in LinearCombination");
  return r;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw ResourceLimit("integer overflow in LinearCombination");
  return r;
}

// Open-interval root count of a square-free chain.
int count_open(const SturmSequence& s, const RationalPoly& p, const Rational& lo, const Rational& hi) {
  int n = s.count_roots(lo, hi);
  if (sgn(p(hi)) == 0) --n;
  return n;
}

std::strong_ordering from_sign(int s) {
  if (s < 0) return std::strong_ordering::less;
  if (s > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

}  // namespace

// --- AlgebraicNumber -------------------------------------------------------

AlgebraicNumber::AlgebraicNumber(Polynomial poly, Rational lo, Rational hi)
    : poly_(std::move(poly)), lo_(std::move(lo)), hi_(std::move(hi)) {
  if (poly_.degree() < 1) throw DomainError("defining polynomial must have degree >= 1");
  if (!(lo_ < hi_)) throw DomainError("isolating interval requires lo < hi");
  RationalPoly rp(poly_);
  SturmSequence sturm(rp);
  int roots = count_open(sturm, rp, lo_, hi_);
  if (roots == 0) throw NoRoot("no root of " + poly_.to_string() + " in (" + to_string(lo_) + ", " + to_string(hi_) + ")");
  if (roots > 1) throw MultipleRoots(std::to_string(roots) + " roots of " + poly_.to_string() + " in the bracket");
  int slo = poly_.sign_at(lo_);
  int shi = poly_.sign_at(hi_);
  if (slo == 0 || shi == 0) throw NoRoot("bracket endpoint is itself a root of " + poly_.to_string());
  if (slo == shi) throw MultipleRoots("root of even multiplicity (no sign change) for " + poly_.to_string());
  sign_lo_ = slo;
}

double AlgebraicNumber::to_double() const {
  if (auto r = as_rational()) return r->get_d();
  return midpoint().get_d();
}

void AlgebraicNumber::bisect() {
  Rational mid = midpoint();
  int s = poly_.sign_at(mid);
  if (s == 0) {
    // exact rational root: shrink symmetrically around it
    Rational quarter = width() / 4;
    lo_ = mid - quarter;
    hi_ = mid + quarter;
    sign_lo_ = poly_.sign_at(lo_);
    return;
  }
  if (s == sign_lo_) {
    lo_ = mid;
  } else {
    hi_ = mid;
  }
}

AlgebraicNumber AlgebraicNumber::refined(const Rational& tol) const {
  if (tol <= 0) throw DomainError("refinement tolerance must be positive");
  AlgebraicNumber out = *this;
  if (out.width() <= tol) return out;
  out.history_.emplace_back(lo_, hi_);
  while (out.width() > tol) out.bisect();
  return out;
}

std::optional<Rational> AlgebraicNumber::as_rational() const {
  if (poly_.degree() != 1) return std::nullopt;
  Rational r(-poly_.coeff(0), poly_.coeff(1));
  r.canonicalize();
  return r;
}

AlgebraicNumber isolate_root(const Polynomial& poly, const Rational& lo, const Rational& hi, const Rational& tol) {
  return AlgebraicNumber(poly, lo, hi).refined(tol);
}

AlgebraicNumber smallest_root(const Polynomial& poly, const Rational& lo, const Rational& hi, const Rational& tol) {
  RationalPoly rp(poly);
  SturmSequence sturm(rp);
  Rational a = lo, b = hi;
  if (count_open(sturm, rp, a, b) == 0) throw NoRoot("no root of " + poly.to_string() + " in the search interval");
  for (int iter = 0; iter < 4096; ++iter) {
    int n = count_open(sturm, rp, a, b);
    if (n == 1 && sgn(rp(a)) != 0 && sgn(rp(b)) != 0 && sgn(rp(a)) != sgn(rp(b)))
      return AlgebraicNumber(poly, a, b).refined(tol);
    Rational mid = (a + b) / 2;
    int left = count_open(sturm, rp, a, mid);
    if (sgn(rp(mid)) == 0 && left == 0) {
      // the smallest root is exactly mid
      Rational eps = (b - a) / 4;
      while (count_open(sturm, rp, mid - eps, mid + eps) != 1) eps /= 2;
      return AlgebraicNumber(poly, mid - eps, mid + eps).refined(tol);
    }
    if (left >= 1) {
      b = mid;
    } else {
      a = mid;
    }
  }
  throw PrecisionExhausted("root isolation did not converge for " + poly.to_string());
}

std::strong_ordering compare(const AlgebraicNumber& a, const AlgebraicNumber& b) {
  AlgebraicNumber x = a, y = b;
  bool equality_checked = false;
  for (int iter = 0; iter < 4096; ++iter) {
    if (x.upper() <= y.lower()) return std::strong_ordering::less;
    if (y.upper() <= x.lower()) return std::strong_ordering::greater;
    if (!equality_checked) {
      equality_checked = true;
      RationalPoly g = gcd(RationalPoly(x.polynomial()), RationalPoly(y.polynomial()));
      if (g.degree() >= 1) {
        Rational lo = x.lower() > y.lower() ? x.lower() : y.lower();
        Rational hi = x.upper() < y.upper() ? x.upper() : y.upper();
        SturmSequence s(g);
        if (count_open(s, g, lo, hi) >= 1) return std::strong_ordering::equal;
      }
    }
    if (x.width() >= y.width()) {
      x.bisect();
    } else {
      y.bisect();
    }
  }
  throw PrecisionExhausted("algebraic comparison did not separate");
}

std::strong_ordering compare(const AlgebraicNumber& a, const Rational& b) {
  if (auto r = a.as_rational()) return from_sign(sgn(*r - b));
  AlgebraicNumber x = a;
  for (int iter = 0; iter < 4096; ++iter) {
    if (b <= x.lower()) return std::strong_ordering::greater;
    if (b >= x.upper()) return std::strong_ordering::less;
    if (x.polynomial().sign_at(b) == 0) return std::strong_ordering::equal;
    x.bisect();
  }
  throw PrecisionExhausted("algebraic/rational comparison did not separate");
}

Rational default_tolerance() { return Rational(1, 1000000000000000L); }

// --- LinearCombination -----------------------------------------------------

LinearCombination::LinearCombination(std::vector<std::int64_t> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

void LinearCombination::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

LinearCombination LinearCombination::constant(std::int64_t c) { return LinearCombination({c}); }

LinearCombination LinearCombination::monomial(std::int64_t c, int k) {
  if (k < 0) throw DomainError("negative exponent");
  std::vector<std::int64_t> v(static_cast<std::size_t>(k) + 1, 0);
  v.back() = c;
  return LinearCombination(std::move(v));
}

LinearCombination LinearCombination::one_minus_lambda() { return LinearCombination({1, -1}); }

std::int64_t LinearCombination::coeff(int k) const {
  if (k < 0 || k >= static_cast<int>(coeffs_.size())) return 0;
  return coeffs_[static_cast<std::size_t>(k)];
}

LinearCombination& LinearCombination::operator+=(const LinearCombination& other) {
  if (other.coeffs_.size() > coeffs_.size()) coeffs_.resize(other.coeffs_.size(), 0);
  for (std::size_t k = 0; k < other.coeffs_.size(); ++k) coeffs_[k] = checked_add(coeffs_[k], other.coeffs_[k]);
  trim();
  return *this;
}

LinearCombination& LinearCombination::operator-=(const LinearCombination& other) {
  if (other.coeffs_.size() > coeffs_.size()) coeffs_.resize(other.coeffs_.size(), 0);
  for (std::size_t k = 0; k < other.coeffs_.size(); ++k) coeffs_[k] = checked_add(coeffs_[k], -other.coeffs_[k]);
  trim();
  return *this;
}

LinearCombination LinearCombination::operator-() const { return scaled(-1); }

LinearCombination operator*(const LinearCombination& a, const LinearCombination& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<std::int64_t> out(a.coeffs_.size() + b.coeffs_.size() - 1, 0);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (a.coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j)
      out[i + j] = checked_add(out[i + j], checked_mul(a.coeffs_[i], b.coeffs_[j]));
  }
  return LinearCombination(std::move(out));
}

LinearCombination LinearCombination::scaled(std::int64_t factor) const {
  std::vector<std::int64_t> out = coeffs_;
  for (auto& c : out) c = checked_mul(c, factor);
  return LinearCombination(std::move(out));
}

LinearCombination LinearCombination::shifted(int k) const {
  if (is_zero() || k == 0) return *this;
  std::vector<std::int64_t> out(static_cast<std::size_t>(k), 0);
  out.insert(out.end(), coeffs_.begin(), coeffs_.end());
  return LinearCombination(std::move(out));
}

double LinearCombination::evaluate(double lambda) const {
  double acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * lambda + static_cast<double>(*it);
  return acc;
}

std::string LinearCombination::to_string() const {
  std::vector<BigInt> c;
  for (auto v : coeffs_) c.emplace_back(static_cast<long>(v));
  return Polynomial(std::move(c)).to_string('L');
}

// --- Parameter -------------------------------------------------------------

struct Parameter::Impl {
  bool is_rational = false;
  Rational rational;
  std::optional<AlgebraicNumber> algebraic;
  Polynomial poly;
  RationalPoly rpoly;
  bool monic = false;
  std::vector<std::int64_t> monic_coeffs;  // defining polynomial when monic with small coefficients
  double approx = 0.0;
  double delta = 0.0;  // certified bound on |approx - value|
  std::string label;
};

Parameter Parameter::rational(const Rational& value) {
  auto impl = std::make_shared<Impl>();
  impl->is_rational = true;
  impl->rational = value;
  impl->rational.canonicalize();
  impl->poly = Polynomial(std::vector<BigInt>{-impl->rational.get_num(), impl->rational.get_den()});
  impl->rpoly = RationalPoly(impl->poly);
  impl->approx = impl->rational.get_d();
  impl->delta = std::abs(impl->approx) * 4.0 * std::numeric_limits<double>::epsilon() + 1e-300;
  impl->label = impl->rational.get_str();
  return Parameter(std::move(impl));
}

Parameter Parameter::algebraic(const AlgebraicNumber& value, std::string label) {
  if (auto r = value.as_rational()) {
    Parameter p = rational(*r);
    if (!label.empty()) {
      auto impl = std::make_shared<Impl>(*p.impl_);
      impl->label = std::move(label);
      return Parameter(std::move(impl));
    }
    return p;
  }
  auto impl = std::make_shared<Impl>();
  Rational tol(1);
  tol /= BigInt(1) << 100;
  impl->algebraic = value.refined(tol);
  impl->poly = value.polynomial();
  impl->rpoly = RationalPoly(impl->poly);
  impl->approx = impl->algebraic->midpoint().get_d();
  impl->delta = std::abs(impl->approx) * 4.0 * std::numeric_limits<double>::epsilon() + impl->algebraic->width().get_d();
  if (impl->poly.is_monic()) {
    bool small = true;
    for (const auto& c : impl->poly.coeffs()) small = small && c.fits_slong_p();
    if (small) {
      impl->monic = true;
      for (const auto& c : impl->poly.coeffs()) impl->monic_coeffs.push_back(c.get_si());
    }
  }
  if (label.empty()) {
    std::ostringstream os;
    os << "root of " << impl->poly.to_string() << " near " << impl->approx;
    label = os.str();
  }
  impl->label = std::move(label);
  return Parameter(std::move(impl));
}

bool Parameter::is_rational() const { return impl_->is_rational; }

const Rational& Parameter::rational_value() const {
  if (!impl_->is_rational) throw DomainError("parameter is not rational");
  return impl_->rational;
}

const AlgebraicNumber& Parameter::algebraic_value() const {
  if (impl_->is_rational) throw DomainError("parameter is rational");
  return *impl_->algebraic;
}

const Polynomial& Parameter::polynomial() const { return impl_->poly; }
double Parameter::value() const { return impl_->approx; }
const std::string& Parameter::label() const { return impl_->label; }

int Parameter::sign(const LinearCombination& c) const { return sign(std::span<const std::int64_t>(c.coeffs())); }

int Parameter::sign(std::span<const std::int64_t> coeffs) const {
  std::size_t n = coeffs.size();
  while (n > 0 && coeffs[n - 1] == 0) --n;
  if (n == 0) return 0;
  coeffs = coeffs.first(n);

  const Impl& p = *impl_;
  // floating-point filter with a certified error bound
  double x = p.approx;
  double m = std::max(1.0, std::abs(x) + p.delta);
  double value = 0.0, magnitude = 0.0;
  for (std::size_t k = n; k-- > 0;) {
    value = value * x + static_cast<double>(coeffs[k]);
    magnitude = magnitude * m + std::abs(static_cast<double>(coeffs[k]));
  }
  double deg = static_cast<double>(n);
  double err = 2.0 * magnitude * (deg * p.delta + (2.0 * deg + 4.0) * std::numeric_limits<double>::epsilon());
  if (value > err) return 1;
  if (value < -err) return -1;

  if (p.is_rational) {
    const BigInt& num = p.rational.get_num();
    const BigInt& den = p.rational.get_den();
    BigInt acc = 0, den_pow = 1;
    // sum c_k num^k den^(N-k), accumulated by Horner in num with den powers
    for (std::size_t k = n; k-- > 0;) {
      acc = acc * num + BigInt(static_cast<long>(coeffs[k])) * den_pow;
      den_pow *= den;
    }
    return sgn(acc);
  }

  std::vector<std::int64_t> v(coeffs.begin(), coeffs.end());
  RationalPoly r = reduce(LinearCombination(std::move(v)));
  if (r.is_zero()) return 0;
  AlgebraicNumber alpha = *p.algebraic;
  for (int round = 0; round <= kRefinementCap; ++round) {
    RationalInterval range = evaluate(r, RationalInterval{alpha.lower(), alpha.upper()});
    if (range.lo > 0) return 1;
    if (range.hi < 0) return -1;
    alpha.bisect();
  }
  throw PrecisionExhausted("sign undecided after " + std::to_string(kRefinementCap) +
                           " refinements at " + p.label);
}

int Parameter::sign_minus_rational(const LinearCombination& num, const Rational& r) const {
  const BigInt& rn = r.get_num();
  const BigInt& rd = r.get_den();
  if (rd.fits_slong_p() && rn.fits_slong_p()) {
    try {
      LinearCombination scaled = num.scaled(rd.get_si()) - LinearCombination::constant(rn.get_si());
      return sign(scaled);
    } catch (const ResourceLimit&) {
      // fall through to the rational path
    }
  }
  std::vector<Rational> c;
  for (auto v : num.coeffs()) c.emplace_back(static_cast<long>(v));
  if (c.empty()) c.emplace_back(0);
  c[0] -= r;
  RationalPoly poly(std::move(c));
  if (poly.is_zero()) return 0;
  if (impl_->is_rational) return sgn(poly(impl_->rational));
  RationalPoly red = remainder(poly, impl_->rpoly);
  if (red.is_zero()) return 0;
  AlgebraicNumber alpha = *impl_->algebraic;
  for (int round = 0; round <= kRefinementCap; ++round) {
    RationalInterval range = evaluate(red, RationalInterval{alpha.lower(), alpha.upper()});
    if (range.lo > 0) return 1;
    if (range.hi < 0) return -1;
    alpha.bisect();
  }
  throw PrecisionExhausted("sign undecided at " + impl_->label);
}

RationalPoly Parameter::reduce(const LinearCombination& c) const {
  const Impl& p = *impl_;
  if (p.monic) {
    std::vector<std::int64_t> v = c.coeffs();
    int d = static_cast<int>(p.monic_coeffs.size()) - 1;
    for (int k = static_cast<int>(v.size()) - 1; k >= d; --k) {
      std::int64_t lead = v[static_cast<std::size_t>(k)];
      if (lead == 0) continue;
      for (int i = 0; i <= d; ++i) {
        auto idx = static_cast<std::size_t>(k - d + i);
        v[idx] = checked_add(v[idx], -checked_mul(lead, p.monic_coeffs[static_cast<std::size_t>(i)]));
      }
    }
    std::vector<Rational> out;
    for (std::size_t k = 0; k < v.size() && static_cast<int>(k) < d; ++k) out.emplace_back(static_cast<long>(v[k]));
    return RationalPoly(std::move(out));
  }
  std::vector<Rational> out;
  for (auto v : c.coeffs()) out.emplace_back(static_cast<long>(v));
  return remainder(RationalPoly(std::move(out)), p.rpoly);
}

namespace {

__extension__ typedef __int128 i128;

template <typename T>
void append_bytes(std::string& out, const T& value) {
  char buf[sizeof(T)];
  std::memcpy(buf, &value, sizeof(T));
  out.append(buf, sizeof(T));
}

bool mul128(i128 a, i128 b, i128& r) { return !__builtin_mul_overflow(a, b, &r); }
bool add128(i128 a, i128 b, i128& r) { return !__builtin_add_overflow(a, b, &r); }

}  // namespace

std::string Parameter::key(const LinearCombination& c) const {
  const Impl& p = *impl_;
  std::string out;
  if (p.is_rational) {
    // value = N / q^D normalised so that q does not divide N (or D = 0)
    const auto& coeffs = c.coeffs();
    if (coeffs.empty()) return std::string("r0");
    int deg = static_cast<int>(coeffs.size()) - 1;
    if (p.rational.get_num().fits_slong_p() && p.rational.get_den().fits_slong_p()) {
      i128 num = p.rational.get_num().get_si();
      i128 den = p.rational.get_den().get_si();
      i128 acc = 0, den_pow = 1;
      bool ok = true;
      for (int k = deg; k >= 0 && ok; --k) {
        i128 term, prod;
        ok = mul128(acc, num, prod) && mul128(static_cast<i128>(coeffs[static_cast<std::size_t>(k)]), den_pow, term) &&
             add128(prod, term, acc);
        if (k > 0) ok = ok && mul128(den_pow, den, den_pow);
      }
      if (ok) {
        int d = deg;
        while (d > 0 && den != 1 && acc % den == 0) {
          acc /= den;
          --d;
        }
        if (den == 1) d = 0;
        out.push_back('r');
        append_bytes(out, acc);
        append_bytes(out, d);
        return out;
      }
    }
    const BigInt& num = p.rational.get_num();
    const BigInt& den = p.rational.get_den();
    BigInt acc = 0, den_pow = 1;
    for (int k = deg; k >= 0; --k) {
      acc = acc * num + BigInt(static_cast<long>(coeffs[static_cast<std::size_t>(k)])) * den_pow;
      if (k > 0) den_pow *= den;
    }
    int d = deg;
    while (d > 0 && den != 1 && mpz_divisible_p(acc.get_mpz_t(), den.get_mpz_t())) {
      acc /= den;
      --d;
    }
    if (den == 1) d = 0;
    if (acc.fits_slong_p()) {
      out.push_back('r');
      append_bytes(out, static_cast<i128>(acc.get_si()));
      append_bytes(out, d);
      return out;
    }
    return "R" + acc.get_str(16) + ":" + std::to_string(d);
  }
  if (p.monic) {
    std::vector<std::int64_t> v = c.coeffs();
    int d = static_cast<int>(p.monic_coeffs.size()) - 1;
    for (int k = static_cast<int>(v.size()) - 1; k >= d; --k) {
      std::int64_t lead = v[static_cast<std::size_t>(k)];
      if (lead == 0) continue;
      for (int i = 0; i <= d; ++i) {
        auto idx = static_cast<std::size_t>(k - d + i);
        v[idx] = checked_add(v[idx], -checked_mul(lead, p.monic_coeffs[static_cast<std::size_t>(i)]));
      }
    }
    v.resize(static_cast<std::size_t>(d), 0);
    out.push_back('a');
    for (auto x : v) append_bytes(out, x);
    return out;
  }
  RationalPoly r = reduce(c);
  out = "q";
  for (const auto& x : r.coeffs()) out += x.get_str(16) + ",";
  return out;
}

std::strong_ordering compare(const LinearCombination& a, const LinearCombination& b, const Parameter& lambda) {
  return from_sign(lambda.sign(a - b));
}

// --- named constants -------------------------------------------------------

AlgebraicNumber multinacci(int m, const Rational& tol) {
  if (m < 2) throw DomainError("multinacci index must be >= 2");
  std::vector<BigInt> c(static_cast<std::size_t>(m) + 1, 1);
  c[0] = -1;
  return isolate_root(Polynomial(std::move(c)), Rational(1, 2), Rational(2, 3), tol);
}

AlgebraicNumber tau(int m, int d, const Rational& tol) {
  if (m < 2 || d < 2) throw DomainError("tau requires m >= 2 and d >= 2");
  std::vector<BigInt> c(static_cast<std::size_t>(m) + 2, 0);
  c[0] = 1;
  c[1] = -(d + 1);
  c[static_cast<std::size_t>(m) + 1] = d * (d + 1) / 2;
  return smallest_root(Polynomial(std::move(c)), Rational(0), Rational(2, d + 1), tol);
}

AlgebraicNumber sigma(int m, const Rational& tol) {
  if (m < 2) throw DomainError("sigma requires m >= 2");
  // (2t^m - 3t + 1) / (t - 1) = 2(t^{m-1} + ... + t) - 1
  std::vector<BigInt> c(static_cast<std::size_t>(m), 2);
  c[0] = -1;
  return smallest_root(Polynomial(std::move(c)), Rational(0), Rational(1), tol);
}

AlgebraicNumber lambda_star(const Rational& tol) {
  return isolate_root(Polynomial{-1, 2, -2, 2}, Rational(3, 5), Rational(33, 50), tol);
}

AlgebraicNumber inverse_multinacci(int m, const Rational& tol) {
  if (m < 2) throw DomainError("multinacci index must be >= 2");
  std::vector<BigInt> c(static_cast<std::size_t>(m) + 1, -1);
  c.back() = 1;
  return isolate_root(Polynomial(std::move(c)), Rational(1), Rational(2), tol);
}

Parameter multinacci_parameter(int m) { return Parameter::algebraic(multinacci(m), "omega:" + std::to_string(m)); }

Parameter lambda_star_parameter() { return Parameter::algebraic(lambda_star(), "lambda-star"); }

// --- dimensions ------------------------------------------------------------

double gasket_dimension(int m, int d) {
  return std::log(tau(m, d).to_double()) / std::log(multinacci(m).to_double());
}

double uniqueness_dimension(int m) {
  return std::log(sigma(m).to_double()) / std::log(multinacci(m).to_double());
}

double sierpinski_dimension(int d, double lambda) {
  if (d < 1) throw DomainError("dimension must be >= 1");
  if (!(lambda > 0.0) || lambda > 0.5) throw DomainError("similarity-dimension formula needs 0 < lambda <= 1/2");
  return std::log(static_cast<double>(d + 1)) / -std::log(lambda);
}

}  // namespace gasket
