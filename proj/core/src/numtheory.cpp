#include "gasket/numtheory.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <unordered_set>

#include <json.hpp>

#include "gasket/error.h"

namespace gasket {

namespace {

LinearCombination from_coeffs(const std::vector<int>& c) {
  std::vector<std::int64_t> v(c.begin(), c.end());
  return LinearCombination(std::move(v));
}

LinearCombination x_power(int k) { return LinearCombination::monomial(1, k); }

class EllSearch {
 public:
  EllSearch(const Parameter& theta, int n_max, std::uint64_t cap)
      : theta_(theta), n_max_(n_max), cap_(cap), memo_(!theta.is_rational() && theta.polynomial().is_monic()) {
    double t = theta.value();
    pow_.assign(static_cast<std::size_t>(n_max) + 2, 1.0);
    geo_.assign(static_cast<std::size_t>(n_max) + 2, 0.0);
    for (std::size_t k = 1; k < pow_.size(); ++k) {
      pow_[k] = pow_[k - 1] * t;
      geo_[k] = geo_[k - 1] + pow_[k - 1];
    }
    margin_ = 1e-12 + 16.0 * (n_max + 2) * std::numeric_limits<double>::epsilon() * geo_.back();
    if (memo_) seen_.resize(static_cast<std::size_t>(n_max) + 1);
    result_.n_max = n_max;
    result_.bound = 1.0;
    result_.witness = {{1}, LinearCombination::constant(1), 1.0};
  }

  EllResult run() {
    for (int degree = 1; degree <= n_max_; ++degree) {
      coeffs_.assign(static_cast<std::size_t>(degree) + 1, 0);
      coeffs_[static_cast<std::size_t>(degree)] = 1;
      visit(degree, 1.0, LinearCombination::constant(1));
    }
    return result_;
  }

 private:
  void visit(int k, double v, const LinearCombination& partial) {
    if (++result_.nodes > cap_)
      throw ResourceLimit("branch and bound exceeded " + std::to_string(cap_) + " nodes; best so far " +
                          std::to_string(result_.bound));
    if (k == 0) {
      leaf(v);
      return;
    }
    auto ku = static_cast<std::size_t>(k);
    if (std::abs(v) * pow_[ku] - geo_[ku] > result_.bound + margin_) return;
    if (memo_ && !seen_[ku].insert(theta_.key(partial)).second) return;
    for (int s : {-1, 0, 1}) {
      coeffs_[ku - 1] = s;
      LinearCombination next = memo_ ? partial.shifted(1) + LinearCombination::constant(s) : LinearCombination();
      visit(k - 1, v * pow_[1] + s, next);
    }
    coeffs_[ku - 1] = 0;
  }

  void leaf(double v) {
    double a = std::abs(v);
    if (a > result_.bound + margin_) return;
    LinearCombination value = from_coeffs(coeffs_);
    int sign = a > margin_ ? (v > 0 ? 1 : -1) : theta_.sign(value);
    if (sign == 0) return;
    if (a >= result_.bound - margin_) {
      LinearCombination best = result_.witness.value.scaled(theta_.sign(result_.witness.value));
      if (theta_.sign(value.scaled(sign) - best) >= 0) return;
    }
    result_.bound = a;
    result_.witness = {coeffs_, value, a};
  }

  const Parameter& theta_;
  int n_max_;
  std::uint64_t cap_;
  bool memo_;
  std::vector<double> pow_, geo_;
  double margin_ = 0.0;
  std::vector<int> coeffs_;
  std::vector<std::unordered_set<std::string>> seen_;
  EllResult result_;
};

}  // namespace

EllResult ell_upper(const Parameter& theta, int n_max, std::uint64_t node_cap) {
  if (n_max < 1) throw DomainError("n_max must be >= 1");
  if (n_max > 62) throw ResourceLimit("degree above 62");
  if (theta.sign_minus_rational(x_power(1), Rational(1)) <= 0) throw DomainError("ell needs theta > 1");
  return EllSearch(theta, n_max, node_cap).run();
}

std::optional<int> inverse_multinacci_index(const Parameter& theta) {
  for (int m = 2; m <= 30; ++m) {
    std::vector<std::int64_t> c(static_cast<std::size_t>(m) + 1, -1);
    c.back() = 1;
    if (theta.sign(LinearCombination(std::move(c))) == 0) return m;
  }
  return std::nullopt;
}

std::optional<int> multinacci_index(const Parameter& lambda) {
  static const std::vector<AlgebraicNumber> omegas = [] {
    std::vector<AlgebraicNumber> v;
    for (int m = 2; m <= 30; ++m) v.push_back(multinacci(m));
    return v;
  }();
  for (int m = 2; m <= 30; ++m) {
    std::vector<std::int64_t> c(static_cast<std::size_t>(m) + 1, 1);
    c[0] = -1;
    if (lambda.sign(LinearCombination(std::move(c))) == 0) return m;
    if (lambda.is_rational()) {
      const auto& w = omegas[static_cast<std::size_t>(m - 2)];
      if (lambda.rational_value() > w.lower() && lambda.rational_value() < w.upper()) return m;
    }
  }
  return std::nullopt;
}

std::string SeparationReport::to_json() const {
  nlohmann::ordered_json j;
  j["theta"] = theta;
  j["n_max"] = n_max;
  j["min_abs"] = min_abs;
  j["witness_coeffs"] = witness_coeffs;
  j["bound_2_over_2_plus_theta"] = bound;
  j["certified"] = certified;
  j["multinacci"] = multinacci ? nlohmann::ordered_json(*multinacci) : nlohmann::ordered_json(nullptr);
  return j.dump(2);
}

SeparationReport separation_bound_check(const Parameter& theta, int n_max) {
  LinearCombination x = x_power(1);
  if (theta.sign_minus_rational(x, Rational(3, 2)) <= 0 || theta.sign_minus_rational(x, Rational(2)) >= 0)
    throw DomainError("the bound 2/(2+theta) is stated for theta in (3/2, 2)");
  SeparationReport rep;
  rep.theta = theta.label();
  rep.n_max = n_max;
  EllResult ell = ell_upper(theta, n_max);
  rep.min_abs = ell.bound;
  rep.witness_coeffs = ell.witness.coeffs;
  rep.bound = 2.0 / (2.0 + theta.value());
  rep.multinacci = inverse_multinacci_index(theta);
  // |w| (2 + theta) < 2
  LinearCombination w = ell.witness.value.scaled(theta.sign(ell.witness.value));
  bool below = theta.sign(w * (LinearCombination::constant(2) + x) - LinearCombination::constant(2)) < 0;
  rep.certified = below && !rep.multinacci;
  return rep;
}

std::string ConverseWitness::to_json() const {
  nlohmann::ordered_json j;
  j["found"] = found;
  if (found) {
    j["n"] = n;
    j["digits"] = digits;
  } else {
    j["reason"] = reason;
  }
  return j.dump(2);
}

bool witness_inequality_holds(const Parameter& lambda, int n, const std::vector<int>& digits) {
  if (n < 1 || digits.size() != static_cast<std::size_t>(n - 1)) throw DomainError("witness needs n-1 digits");
  LinearCombination mid = LinearCombination::constant(1);
  for (std::size_t k = 0; k < digits.size(); ++k)
    if (digits[k] != 0) mid -= x_power(static_cast<int>(k) + 1).scaled(digits[k]);
  LinearCombination one_minus = LinearCombination::one_minus_lambda();
  LinearCombination two_minus = LinearCombination({-1, 2});  // 2 lambda - 1
  bool left = lambda.sign(one_minus * mid - two_minus * x_power(n)) > 0;
  bool right = lambda.sign(x_power(n) - mid) > 0;
  return left && right;
}

ConverseWitness converse_witness(const Parameter& lambda, int n_max) {
  LinearCombination x = x_power(1);
  if (lambda.sign_minus_rational(x, Rational(1, 2)) <= 0 || lambda.sign_minus_rational(x, Rational(2, 3)) >= 0)
    throw DomainError("converse witness needs lambda in (1/2, 2/3)");
  if (auto m = multinacci_index(lambda)) throw DomainError("lambda is multinacci (m = " + std::to_string(*m) + ")");
  ConverseWitness out;
  if (lambda.sign(LinearCombination({-1, 2, -2, 2})) >= 0) {
    out.reason = "radial regime";
    return out;
  }
  if (lambda.sign(LinearCombination({-1, 1, 1})) > 0) {
    if (n_max >= 2 && witness_inequality_holds(lambda, 2, {1})) {
      out.found = true;
      out.n = 2;
      out.digits = {1};
    } else {
      out.reason = "no witness up to n_max";
    }
    return out;
  }
  // below omega_2: a position with a_n = 0, a_{n+1} = 1 in the greedy expansion of 1
  std::vector<int> a;
  LinearCombination sum;
  for (int k = 1; k <= n_max + 1; ++k) {
    LinearCombination trial = sum + x_power(k);
    if (lambda.sign_minus_rational(trial, Rational(1)) <= 0) {
      a.push_back(1);
      sum = std::move(trial);
    } else {
      a.push_back(0);
    }
  }
  for (int n = 1; n <= n_max; ++n) {
    if (a[static_cast<std::size_t>(n - 1)] != 0 || a[static_cast<std::size_t>(n)] != 1) continue;
    std::vector<int> digits(a.begin(), a.begin() + (n - 1));
    if (witness_inequality_holds(lambda, n, digits)) {
      out.found = true;
      out.n = n;
      out.digits = std::move(digits);
      return out;
    }
  }
  out.reason = "no witness up to n_max";
  return out;
}

GapCheck gap_check(const Parameter& lambda, int n) {
  if (n < 0) throw DomainError("n must be >= 0");
  if (n > 20) throw ResourceLimit("gap check limited to n <= 20 (2^21 subset sums)");
  const int len = n + 1;
  const std::uint32_t count = 1u << len;
  double lv = lambda.value();
  std::vector<double> approx(count, 0.0);
  for (std::uint32_t mask = 0; mask < count; ++mask) {
    double s = 0.0, p = 1.0;
    for (int k = 0; k < len; ++k, p *= lv)
      if (mask >> k & 1u) s += p;
    approx[mask] = s;
  }
  auto combo = [&](std::uint32_t mask) {
    std::vector<std::int64_t> c(static_cast<std::size_t>(len), 0);
    for (int k = 0; k < len; ++k) c[static_cast<std::size_t>(k)] = mask >> k & 1u;
    return LinearCombination(std::move(c));
  };
  std::vector<std::uint32_t> order(count);
  std::iota(order.begin(), order.end(), 0u);
  std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
    double d = approx[a] - approx[b];
    if (std::abs(d) > 1e-9) return d < 0;
    int s = lambda.sign(combo(a) - combo(b));
    return s != 0 ? s < 0 : a < b;
  });
  GapCheck out;
  LinearCombination step = x_power(len);
  for (std::uint32_t i = 1; i < count; ++i) {
    std::uint32_t lo = order[i - 1], hi = order[i];
    if (approx[hi] - approx[lo] > std::pow(lv, len) + 1e-9) continue;
    LinearCombination diff = combo(hi) - combo(lo);
    if (lambda.sign(diff) == 0) continue;
    if (lambda.sign(diff - step) < 0) {
      out.holds = false;
      for (int k = 0; k < len; ++k) {
        out.upper.push_back(static_cast<int>(hi >> k & 1u));
        out.lower.push_back(static_cast<int>(lo >> k & 1u));
      }
      return out;
    }
  }
  return out;
}

bool erdos_joo_gap_check(int m, int n) {
  if (m < 2) throw DomainError("m must be >= 2");
  return gap_check(multinacci_parameter(m), n).holds;
}

}  // namespace gasket
