#pragma once

// Independent reference computations for the unit tests: plain mpq matrices,
// arithmetic in Z[omega_2], random rational points of the simplex.

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

#include <gmpxx.h>

#include "gasket/geometry.h"

namespace oracle {

using Q = mpq_class;
using Mat = std::vector<std::vector<Q>>;

inline Q eval(const gasket::LinearCombination& c, const Q& x) {
  Q acc = 0;
  const auto& k = c.coeffs();
  for (auto it = k.rbegin(); it != k.rend(); ++it) acc = acc * x + Q(static_cast<long>(*it));
  return acc;
}

inline std::vector<Q> eval(const std::vector<gasket::LinearCombination>& v, const Q& x) {
  std::vector<Q> out;
  for (const auto& c : v) out.push_back(eval(c, x));
  return out;
}

// f_i(x) = lambda x + (1 - lambda) p_i on barycentric column vectors.
inline Mat generator(int i, int d, const Q& lambda) {
  Mat m(static_cast<std::size_t>(d + 1), std::vector<Q>(static_cast<std::size_t>(d + 1), Q(0)));
  for (int r = 0; r <= d; ++r)
    for (int c = 0; c <= d; ++c) {
      Q v = 0;
      if (r == c) v += lambda;
      if (r == i) v += 1 - lambda;
      m[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] = v;
    }
  return m;
}

inline Mat multiply(const Mat& a, const Mat& b) {
  std::size_t n = a.size();
  Mat c(n, std::vector<Q>(n, Q(0)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t j = 0; j < n; ++j) c[i][j] += a[i][k] * b[k][j];
  return c;
}

inline Mat word_matrix(const gasket::SymbolWord& w, int d, const Q& lambda) {
  Mat m = generator(0, d, 1);  // identity
  for (std::size_t k = 0; k < w.size(); ++k) m = multiply(m, generator(w[k], d, lambda));
  return m;
}

// Lower corner of f_w(simplex): the image of the vertex weights at zero,
// i.e. the minimum of each row.
inline std::vector<Q> corner(const gasket::SymbolWord& w, int d, const Q& lambda) {
  Mat m = word_matrix(w, d, lambda);
  std::vector<Q> out;
  for (const auto& row : m) out.push_back(*std::min_element(row.begin(), row.end()));
  return out;
}

inline Q power(const Q& x, int n) {
  Q r = 1;
  for (int k = 0; k < n; ++k) r *= x;
  return r;
}

inline bool in_corner(const std::vector<Q>& p, const std::vector<Q>& lower) {
  for (std::size_t j = 0; j < p.size(); ++j)
    if (p[j] < lower[j]) return false;
  return true;
}

inline bool in_hole(const std::vector<Q>& p, const std::vector<Q>& lower, const std::vector<Q>& upper) {
  for (std::size_t j = 0; j < p.size(); ++j)
    if (p[j] < lower[j] || p[j] >= upper[j]) return false;
  return true;
}

// Uniform-ish rational point of the simplex with denominator `scale`.
inline std::vector<Q> random_point(std::mt19937_64& rng, int d, long scale) {
  std::uniform_int_distribution<long> cut(0, scale);
  std::vector<long> cuts{0, scale};
  for (int k = 0; k < d; ++k) cuts.push_back(cut(rng));
  std::sort(cuts.begin(), cuts.end());
  std::vector<Q> p;
  for (int k = 0; k <= d; ++k) p.push_back(Q(cuts[static_cast<std::size_t>(k) + 1] - cuts[static_cast<std::size_t>(k)], scale));
  for (auto& x : p) x.canonicalize();
  return p;
}

// a + b w with w^2 = 1 - w.
struct ZOmega {
  long long a = 0, b = 0;
  friend ZOmega operator+(ZOmega x, ZOmega y) { return {x.a + y.a, x.b + y.b}; }
  friend ZOmega operator-(ZOmega x, ZOmega y) { return {x.a - y.a, x.b - y.b}; }
  friend ZOmega operator*(ZOmega x, ZOmega y) {
    // (a + bw)(c + ew) = ac + (ae + bc) w + be w^2, w^2 = 1 - w
    return {x.a * y.a + x.b * y.b, x.a * y.b + x.b * y.a - x.b * y.b};
  }
  friend auto operator<=>(const ZOmega&, const ZOmega&) = default;
  double value() const { return static_cast<double>(a) + static_cast<double>(b) * 0.6180339887498949; }
};

inline ZOmega omega_power(int k) {
  ZOmega r{1, 0};
  for (int i = 0; i < k; ++i) r = r * ZOmega{0, 1};
  return r;
}

}  // namespace oracle
