#pragma once

// Greedy lambda-expansions, addresses, the word relations f_i f_j^m = f_j f_i^m
// and the counting sequences attached to golden gaskets.

#include <string>
#include <vector>

#include "gasket/geometry.h"

namespace gasket {

enum class TailConvention {
  None,
  /// A finite expansion (a_1, ..., a_N) with a_N = 1 becomes the periodic
  /// word (a_1, ..., a_N - 1)^infinity.
  Periodic,
};

struct Expansion {
  Parameter lambda;
  Rational x;
  /// a_1, ..., a_N; digit a_k weighs lambda^k.
  std::vector<int> digits;
  /// The plain greedy remainder reached exactly zero.
  bool finite = false;
  /// Set when the periodic replacement was applied; period is its length.
  bool tail_applied = false;
  int period = 0;

  /// sum_{k=1}^{N} a_k lambda^k
  LinearCombination partial_sum() const;
  std::string to_json() const;
};

/// Greedy digits of x in base lambda. Requires lambda in (1/2, 1) and
/// x in [0, 1]; every decision is exact.
Expansion greedy_expansion(const Parameter& lambda, const Rational& x, int n_digits,
                           TailConvention tail = TailConvention::None);

/// sum_{k=n+1}^{N} a_k lambda^k <= lambda^n for every n < N (exact).
bool satisfies_greedy_bound(const Expansion& e);

/// Greedy word over {0, 1} of length n locating t on the edge p_0 p_1: the
/// region f_w(simplex) meets the edge in [s, s + lambda^n] with
/// s = (1-lambda) sum_{w_k = 0} lambda^k <= t. Requires t in [0, 1].
SymbolWord edge_address(const Parameter& lambda, const Rational& t, int n);

/// Image of the barycenter under f_w (the empty word gives the barycenter).
BarycentricPoint point_from_address(const SymbolWord& w, int d);

/// Lexicographically least word equal to w under the relations
/// i j^m = j i^m (i != j), found by closing the class under both directions.
/// Throws ResourceLimit if the class exceeds max_class words.
SymbolWord canonical_word(const SymbolWord& w, int m, std::size_t max_class = 1u << 20);

/// Applies i j^m -> j i^m (i > j) at the leftmost position until none applies.
/// Terminates but is not confluent; canonical_word is the class invariant.
SymbolWord rewrite_to_fixpoint(const SymbolWord& w, int m);

enum class SequenceKind { U, H, P };

struct CountingSeq {
  SequenceKind kind = SequenceKind::U;
  int m = 2;
  /// values[k] is the k-th term, starting at index 0.
  std::vector<BigInt> values;

  std::string name() const;
  /// Checks the defining recurrence at every index past the seeds.
  bool recurrence_holds() const;
  /// "index,value" rows with a header line.
  std::string to_csv() const;
};

/// u_0 = 1, u_1 = 3, u_2 = 9, u_{n+3} = 3 u_{n+2} - 3 u_n.
CountingSeq u_sequence(int n_max);
/// Holes of level k. m >= 3: h_k = 0 (k < m), h_m = 3,
/// h_k = 2(h_{k-m+1} + ... + h_{k-1}). m = 2: the trapezium count 3 * 2^(k-1).
CountingSeq h_sequence(int m, int k_max);
/// Triangles of size lambda^k. m >= 3: p_k = 0 (k < m), p_m = p_{m+1} = 3,
/// p_k = h_{k-m} + 3(h_{k-m+1} + ... + h_{k-2}). m = 2: 3, 3, then 3 * 2^(k-4).
CountingSeq p_sequence(int m, int k_max);

/// Taylor coefficients of num/den up to t^k_max by exact series division.
/// Coefficient vectors are ascending; den(0) must be nonzero.
std::vector<Rational> series_coefficients(const std::vector<Rational>& num, const std::vector<Rational>& den,
                                          int k_max);

/// Closed forms Q = 3t^m(1-t)/(1-3t+2t^m) and P = 3t^m(1-2t+t^{m+1})/(1-3t+2t^m).
std::vector<Rational> hole_series(int m, int k_max);
std::vector<Rational> triangle_series(int m, int k_max);

/// Coefficients of Q and P agree with h_sequence and p_sequence up to k_max.
bool gf_series_check(int m, int k_max);

/// Words of length n over {0, 1, 2} with no factor i j^m (i != j), counted by
/// a transfer matrix on run states. ResourceLimit for n above max_n.
BigInt count_unique_addresses(int m, int n, int max_n = 100000);

}  // namespace gasket
