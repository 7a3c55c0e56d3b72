#include "gasket/exact.h"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "gasket/error.h"

namespace gasket {

Rational parse_rational(const std::string& text) {
  if (text.empty()) throw DomainError("empty rational literal");
  auto dot = text.find('.');
  auto slash = text.find('/');
  Rational value;
  try {
    if (dot != std::string::npos) {
      if (slash != std::string::npos) throw DomainError("mixed decimal/fraction literal: " + text);
      std::string digits = text.substr(0, dot) + text.substr(dot + 1);
      std::size_t frac_len = text.size() - dot - 1;
      bool negative = !digits.empty() && digits[0] == '-';
      std::string body = negative ? digits.substr(1) : digits;
      if (body.empty() || !std::all_of(body.begin(), body.end(), [](unsigned char c) { return std::isdigit(c); }))
        throw DomainError("malformed decimal literal: " + text);
      BigInt num(body, 10);
      BigInt den;
      mpz_ui_pow_ui(den.get_mpz_t(), 10, frac_len);
      value = Rational(negative ? BigInt(-num) : num, den);
    } else {
      value = Rational(text, 10);
    }
  } catch (const std::invalid_argument&) {
    throw DomainError("malformed rational literal: " + text);
  }
  if (value.get_den() == 0) throw DomainError("zero denominator in " + text);
  value.canonicalize();
  return value;
}

std::string to_string(const Rational& value) { return value.get_str(10); }

// ---------------------------------------------------------------------------

Polynomial::Polynomial(std::vector<BigInt> coeffs) : coeffs_(std::move(coeffs)) {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Polynomial::Polynomial(std::initializer_list<long> coeffs) {
  coeffs_.reserve(coeffs.size());
  for (long c : coeffs) coeffs_.emplace_back(c);
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Rational Polynomial::operator()(const Rational& x) const {
  Rational acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

double Polynomial::operator()(double x) const {
  double acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + it->get_d();
  return acc;
}

int Polynomial::sign_at(const Rational& x) const { return sgn((*this)(x)); }

Polynomial Polynomial::derivative() const {
  std::vector<BigInt> out;
  for (std::size_t k = 1; k < coeffs_.size(); ++k) out.push_back(coeffs_[k] * static_cast<unsigned long>(k));
  return Polynomial(std::move(out));
}

std::string Polynomial::to_string(char var) const {
  if (coeffs_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int k = degree(); k >= 0; --k) {
    const BigInt& c = coeffs_[static_cast<std::size_t>(k)];
    if (c == 0) continue;
    BigInt mag = abs(c);
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    if (mag != 1 || k == 0) os << mag.get_str();
    if (k >= 1) os << var;
    if (k >= 2) os << '^' << k;
    first = false;
  }
  return os.str();
}

// ---------------------------------------------------------------------------

RationalPoly::RationalPoly(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

RationalPoly::RationalPoly(const Polynomial& p) {
  coeffs_.reserve(p.coeffs().size());
  for (const auto& c : p.coeffs()) coeffs_.emplace_back(c);
}

void RationalPoly::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Rational RationalPoly::operator()(const Rational& x) const {
  Rational acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

RationalPoly RationalPoly::derivative() const {
  std::vector<Rational> out;
  for (std::size_t k = 1; k < coeffs_.size(); ++k) out.push_back(coeffs_[k] * static_cast<unsigned long>(k));
  return RationalPoly(std::move(out));
}

RationalPoly RationalPoly::monic() const {
  if (coeffs_.empty()) return *this;
  std::vector<Rational> out = coeffs_;
  Rational lc = coeffs_.back();
  for (auto& c : out) c /= lc;
  return RationalPoly(std::move(out));
}

RationalPoly operator-(const RationalPoly& a, const RationalPoly& b) {
  std::vector<Rational> out(std::max(a.coeffs_.size(), b.coeffs_.size()));
  for (std::size_t k = 0; k < a.coeffs_.size(); ++k) out[k] += a.coeffs_[k];
  for (std::size_t k = 0; k < b.coeffs_.size(); ++k) out[k] -= b.coeffs_[k];
  return RationalPoly(std::move(out));
}

RationalPoly operator*(const RationalPoly& a, const RationalPoly& b) {
  if (a.is_zero() || b.is_zero()) return RationalPoly();
  std::vector<Rational> out(a.coeffs_.size() + b.coeffs_.size() - 1);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
  return RationalPoly(std::move(out));
}

std::pair<RationalPoly, RationalPoly> divmod(const RationalPoly& a, const RationalPoly& b) {
  if (b.is_zero()) throw DomainError("polynomial division by zero");
  std::vector<Rational> rem = a.coeffs();
  int db = b.degree();
  int da = a.degree();
  if (da < db) return {RationalPoly(), a};
  std::vector<Rational> quot(static_cast<std::size_t>(da - db + 1));
  const Rational& lc = b.leading();
  for (int k = da; k >= db; --k) {
    Rational q = rem[static_cast<std::size_t>(k)] / lc;
    if (q == 0) continue;
    quot[static_cast<std::size_t>(k - db)] = q;
    for (int i = 0; i <= db; ++i)
      rem[static_cast<std::size_t>(k - db + i)] -= q * b.coeffs()[static_cast<std::size_t>(i)];
  }
  rem.resize(static_cast<std::size_t>(db));
  return {RationalPoly(std::move(quot)), RationalPoly(std::move(rem))};
}

RationalPoly remainder(const RationalPoly& a, const RationalPoly& b) { return divmod(a, b).second; }

RationalPoly gcd(RationalPoly a, RationalPoly b) {
  while (!b.is_zero()) {
    RationalPoly r = remainder(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

// ---------------------------------------------------------------------------

namespace {

RationalInterval mul(const RationalInterval& a, const RationalInterval& b) {
  Rational p[4] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
  Rational lo = p[0], hi = p[0];
  for (const auto& v : p) {
    if (v < lo) lo = v;
    if (v > hi) hi = v;
  }
  return {lo, hi};
}

}  // namespace

RationalInterval evaluate(const RationalPoly& p, const RationalInterval& x) {
  RationalInterval acc{0, 0};
  const auto& c = p.coeffs();
  for (auto it = c.rbegin(); it != c.rend(); ++it) {
    acc = mul(acc, x);
    acc.lo += *it;
    acc.hi += *it;
  }
  return acc;
}

// ---------------------------------------------------------------------------

SturmSequence::SturmSequence(const RationalPoly& p) {
  if (p.is_zero()) throw DomainError("Sturm sequence of the zero polynomial");
  RationalPoly d = p.derivative();
  RationalPoly square_free = p;
  if (!d.is_zero()) {
    RationalPoly g = gcd(p, d);
    if (g.degree() > 0) square_free = divmod(p, g).first;
  }
  chain_.push_back(square_free);
  RationalPoly next = square_free.derivative();
  while (!next.is_zero()) {
    chain_.push_back(next);
    RationalPoly r = remainder(chain_[chain_.size() - 2], chain_.back());
    std::vector<Rational> negated = r.coeffs();
    for (auto& c : negated) c = -c;
    next = RationalPoly(std::move(negated));
  }
}

int SturmSequence::variations(const Rational& x) const {
  int count = 0;
  int last = 0;
  for (const auto& p : chain_) {
    int s = sgn(p(x));
    if (s == 0) continue;
    if (last != 0 && s != last) ++count;
    last = s;
  }
  return count;
}

int SturmSequence::count_roots(const Rational& lo, const Rational& hi) const {
  if (hi < lo) return 0;
  return variations(lo) - variations(hi);
}

}  // namespace gasket
