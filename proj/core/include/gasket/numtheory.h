#pragma once

// Minimal moduli of {0, +-1} polynomials at a base theta, the bound
// 2/(2 + theta), converse witnesses and the multinacci gap property.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gasket/algebraic.h"

namespace gasket {

/// sum_k s_k theta^k with s_k in {-1, 0, 1}.
struct SignedPolyValue {
  /// s_0, ..., s_n ascending; the leading coefficient is +1.
  std::vector<int> coeffs;
  LinearCombination value;
  /// |value| in floating point.
  double abs = 0.0;
};

struct EllResult {
  /// Minimum of |rho| over nonzero coefficient vectors of degree <= n_max.
  double bound = 1.0;
  SignedPolyValue witness;
  int n_max = 0;
  std::uint64_t nodes = 0;
};

/// Branch and bound over coefficient vectors, highest degree first: a prefix
/// with Horner value v at depth k is cut when |v| theta^k - (theta^k - 1)/(theta - 1)
/// exceeds the best value so far. Ties keep the lowest degree, then the
/// first vector in the order -1 < 0 < 1 read from the top coefficient down.
/// ResourceLimit after node_cap nodes.
EllResult ell_upper(const Parameter& theta, int n_max, std::uint64_t node_cap = 200'000'000);

/// m if 1/theta = omega_m for some m <= 30 (exact test), otherwise nullopt.
std::optional<int> inverse_multinacci_index(const Parameter& theta);
/// m if lambda = omega_m for some m <= 30; a rational inside the isolating
/// interval of some omega_m is reported too.
std::optional<int> multinacci_index(const Parameter& lambda);

struct SeparationReport {
  std::string theta;
  int n_max = 0;
  double min_abs = 0.0;
  std::vector<int> witness_coeffs;
  double bound = 0.0;  // 2 / (2 + theta)
  /// The degree-bounded minimum is strictly below the bound (exact).
  bool certified = false;
  std::optional<int> multinacci;

  /// {theta, n_max, min_abs, witness_coeffs, bound_2_over_2_plus_theta, certified}
  std::string to_json() const;
};

SeparationReport separation_bound_check(const Parameter& theta, int n_max);

struct ConverseWitness {
  bool found = false;
  int n = 0;
  /// a_1, ..., a_{n-1}
  std::vector<int> digits;
  std::string reason;

  std::string to_json() const;
};

/// Exact check of ((2 lambda - 1)/(1 - lambda)) lambda^n < 1 - sum_{k<n} a_k lambda^k < lambda^n.
bool witness_inequality_holds(const Parameter& lambda, int n, const std::vector<int>& digits);

/// Requires lambda in (1/2, 2/3) and not multinacci (DomainError otherwise).
ConverseWitness converse_witness(const Parameter& lambda, int n_max);

struct GapCheck {
  bool holds = true;
  /// On failure: a pair (a, a') of 0/1 vectors, a above a', closer than lambda^(n+1).
  std::vector<int> upper;
  std::vector<int> lower;
};

/// Every positive difference sum (a_k - a'_k) lambda^k over 0/1 vectors of
/// length n+1 is at least lambda^(n+1). Checked on the sorted list of the
/// 2^(n+1) subset sums (adjacent distinct values), exactly.
GapCheck gap_check(const Parameter& lambda, int n);
/// gap_check at omega_m; requires 2 <= m and n <= 20.
bool erdos_joo_gap_check(int m, int n);

}  // namespace gasket
