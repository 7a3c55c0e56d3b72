#pragma once

// Barycentric simplex geometry: generator similitudes, word compositions and
// the corner/hole region calculus. Matrices and bounds are symbolic in the
// contraction ratio (integer combinations of its powers); predicates that
// depend on its value take a Parameter.

#include <cstdint>
#include <string>
#include <vector>

#include "gasket/algebraic.h"

namespace gasket {

/// Finite word over {0, ..., d}. Digit k addresses the k-th outermost map.
class SymbolWord {
 public:
  SymbolWord() = default;
  explicit SymbolWord(std::vector<std::uint8_t> digits) : digits_(std::move(digits)) {}
  SymbolWord(std::initializer_list<int> digits);

  /// Accepts "011", "0,1,1" or "" (empty word).
  static SymbolWord parse(const std::string& text);
  /// Constant word i^n.
  static SymbolWord repeat(int digit, int n);

  std::size_t size() const { return digits_.size(); }
  bool empty() const { return digits_.empty(); }
  int operator[](std::size_t k) const { return digits_[k]; }
  const std::vector<std::uint8_t>& digits() const { return digits_; }
  int max_digit() const;

  /// True for the empty word and for i^n.
  bool is_constant() const;

  SymbolWord appended(int digit) const;
  SymbolWord concat(const SymbolWord& tail) const;

  std::string to_string() const;

  friend auto operator<=>(const SymbolWord&, const SymbolWord&) = default;
  friend bool operator==(const SymbolWord&, const SymbolWord&) = default;

 private:
  std::vector<std::uint8_t> digits_;
};

/// Point of the simplex; coordinate j is numerators[j] / denominator.
struct BarycentricPoint {
  std::vector<LinearCombination> numerators;
  std::int64_t denominator = 1;

  static BarycentricPoint vertex(int j, int d);
  static BarycentricPoint barycenter(int d);

  std::vector<double> to_double(const Parameter& lambda) const;
  /// Exact check that the coordinates sum to 1 (as polynomials in lambda).
  bool sums_to_one() const;
};

/// Linear map of the simplex in barycentric coordinates, acting on column
/// vectors. Entries are symbolic in lambda.
class Similitude {
 public:
  Similitude(int d, SymbolWord word, std::vector<LinearCombination> entries);

  int dimension() const { return d_; }
  const SymbolWord& word() const { return word_; }
  const LinearCombination& entry(int row, int col) const {
    return entries_[static_cast<std::size_t>(row * (d_ + 1) + col)];
  }

  BarycentricPoint apply(const BarycentricPoint& p) const;
  /// Matrix product (*this) * rhs; the word is the concatenation.
  Similitude operator*(const Similitude& rhs) const;

  /// Exact entrywise equality of the values at lambda.
  bool equals_at(const Similitude& other, const Parameter& lambda) const;
  /// Symbolic equality (same polynomials in lambda).
  friend bool operator==(const Similitude& a, const Similitude& b) { return a.d_ == b.d_ && a.entries_ == b.entries_; }

  /// Column sums are identically 1: the map preserves sum x_j = 1.
  bool preserves_simplex() const;

 private:
  int d_;
  SymbolWord word_;
  std::vector<LinearCombination> entries_;
};

/// f_i: row i is (1-lambda, ..., 1, ..., 1-lambda) with 1 on the diagonal,
/// every other row has lambda on the diagonal and 0 elsewhere. The same
/// pattern is used for every d.
Similitude generator_matrix(int i, int d);

/// f_w = f_{w_0} ... f_{w_{n-1}} from the closed form: entry (r, c) is
/// (1-lambda) sum_{k : w_k = r} lambda^k, plus lambda^n when r = c.
Similitude compose_word(const SymbolWord& w, int d);

/// Same product computed by n-1 matrix multiplications (test oracle helper).
Similitude multiply_out(const SymbolWord& w, int d);

/// Sub-simplex {x_j >= L_j for all j}.
struct CornerRegion {
  std::vector<LinearCombination> lower;
  int level = 0;

  int dimension() const { return static_cast<int>(lower.size()) - 1; }
};

/// f_w(H_0): the open inverted simplex {x_j < U_j} inside the closed corner
/// region {x_j >= L_j} of the same word.
struct HoleRegion {
  std::vector<LinearCombination> lower;
  std::vector<LinearCombination> upper;
  int level = 0;

  int dimension() const { return static_cast<int>(upper.size()) - 1; }
};

/// L_j = (1-lambda) sum_{k : w_k = j} lambda^k; the empty word gives L = 0.
CornerRegion image_region(const SymbolWord& w, int d);
/// U_j = L_j + (1-lambda) lambda^n.
HoleRegion hole_region(const SymbolWord& w, int d);

/// Whether the closed regions share a point: sum_j max(a.L_j, b.L_j) <= 1.
bool regions_intersect(const CornerRegion& a, const CornerRegion& b, const Parameter& lambda);
/// Bound vector of the intersection (componentwise max); meaningful only
/// when regions_intersect holds.
CornerRegion intersection(const CornerRegion& a, const CornerRegion& b, const Parameter& lambda);

/// Whether the open hole meets the closed region: with a_j = max(L_j, L'_j)
/// and b_j = U_j, the box {a <= x < b} meets sum x = 1 iff a_j < b_j for all
/// j and sum a <= 1 < sum b.
bool hole_meets_region(const HoleRegion& h, const CornerRegion& r, const Parameter& lambda);

/// Hole is empty as a subset of the simplex (sum_j U_j <= 1).
bool hole_is_empty(const HoleRegion& h, const Parameter& lambda);

/// outer contains inner iff outer.L_j <= inner.L_j for all j.
bool region_contains(const CornerRegion& outer, const CornerRegion& inner, const Parameter& lambda);

/// Exact equality of bound vectors at lambda.
bool same_region(const CornerRegion& a, const CornerRegion& b, const Parameter& lambda);

/// Canonical key of the bound vector: equal keys iff equal regions.
std::string region_key(const CornerRegion& r, const Parameter& lambda);

/// Vertices in floating point: vertex j is L + (1 - sum L) e_j.
std::vector<std::vector<double>> region_vertices(const CornerRegion& r, const Parameter& lambda);
/// Vertices of the hole: vertex j has x_k = U_k for k != j.
std::vector<std::vector<double>> hole_vertices(const HoleRegion& h, const Parameter& lambda);

}  // namespace gasket
