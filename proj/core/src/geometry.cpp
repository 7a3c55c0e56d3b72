#include "gasket/geometry.h"

#include <algorithm>
#include <cctype>

#include "gasket/error.h"

namespace gasket {

// --- SymbolWord ------------------------------------------------------------

SymbolWord::SymbolWord(std::initializer_list<int> digits) {
  for (int v : digits) {
    if (v < 0 || v > 255) throw DomainError("digit out of range");
    digits_.push_back(static_cast<std::uint8_t>(v));
  }
}

SymbolWord SymbolWord::parse(const std::string& text) {
  std::vector<std::uint8_t> out;
  bool separated = text.find(',') != std::string::npos;
  std::size_t pos = 0;
  while (pos < text.size()) {
    char c = text[pos];
    if (c == ',' || std::isspace(static_cast<unsigned char>(c))) {
      ++pos;
      continue;
    }
    if (!std::isdigit(static_cast<unsigned char>(c))) throw DomainError("bad digit in word: " + text);
    if (separated) {
      std::size_t end = pos;
      while (end < text.size() && std::isdigit(static_cast<unsigned char>(text[end]))) ++end;
      int v = std::stoi(text.substr(pos, end - pos));
      if (v > 255) throw DomainError("digit out of range in word: " + text);
      out.push_back(static_cast<std::uint8_t>(v));
      pos = end;
    } else {
      out.push_back(static_cast<std::uint8_t>(c - '0'));
      ++pos;
    }
  }
  return SymbolWord(std::move(out));
}

SymbolWord SymbolWord::repeat(int digit, int n) {
  if (digit < 0 || digit > 255 || n < 0) throw DomainError("bad constant word");
  return SymbolWord(std::vector<std::uint8_t>(static_cast<std::size_t>(n), static_cast<std::uint8_t>(digit)));
}

int SymbolWord::max_digit() const {
  int m = -1;
  for (auto v : digits_) m = std::max(m, static_cast<int>(v));
  return m;
}

bool SymbolWord::is_constant() const {
  return std::all_of(digits_.begin(), digits_.end(), [&](std::uint8_t v) { return v == digits_.front(); });
}

SymbolWord SymbolWord::appended(int digit) const {
  SymbolWord out = *this;
  out.digits_.push_back(static_cast<std::uint8_t>(digit));
  return out;
}

SymbolWord SymbolWord::concat(const SymbolWord& tail) const {
  SymbolWord out = *this;
  out.digits_.insert(out.digits_.end(), tail.digits_.begin(), tail.digits_.end());
  return out;
}

std::string SymbolWord::to_string() const {
  bool wide = max_digit() > 9;
  std::string out;
  for (std::size_t k = 0; k < digits_.size(); ++k) {
    if (wide && k > 0) out += ',';
    out += std::to_string(static_cast<int>(digits_[k]));
  }
  return out;
}

// --- BarycentricPoint ------------------------------------------------------

BarycentricPoint BarycentricPoint::vertex(int j, int d) {
  if (j < 0 || j > d) throw DomainError("vertex index out of range");
  BarycentricPoint p;
  p.numerators.resize(static_cast<std::size_t>(d) + 1);
  p.numerators[static_cast<std::size_t>(j)] = LinearCombination::constant(1);
  return p;
}

BarycentricPoint BarycentricPoint::barycenter(int d) {
  BarycentricPoint p;
  p.numerators.assign(static_cast<std::size_t>(d) + 1, LinearCombination::constant(1));
  p.denominator = d + 1;
  return p;
}

std::vector<double> BarycentricPoint::to_double(const Parameter& lambda) const {
  std::vector<double> out;
  for (const auto& c : numerators) out.push_back(c.evaluate(lambda.value()) / static_cast<double>(denominator));
  return out;
}

bool BarycentricPoint::sums_to_one() const {
  LinearCombination total;
  for (const auto& c : numerators) total += c;
  return total == LinearCombination::constant(denominator);
}

// --- Similitude ------------------------------------------------------------

Similitude::Similitude(int d, SymbolWord word, std::vector<LinearCombination> entries)
    : d_(d), word_(std::move(word)), entries_(std::move(entries)) {
  if (d < 1) throw DomainError("simplex dimension must be >= 1");
  if (entries_.size() != static_cast<std::size_t>((d + 1) * (d + 1))) throw DomainError("matrix size mismatch");
}

BarycentricPoint Similitude::apply(const BarycentricPoint& p) const {
  if (p.numerators.size() != static_cast<std::size_t>(d_ + 1)) throw DomainError("point dimension mismatch");
  BarycentricPoint out;
  out.denominator = p.denominator;
  for (int r = 0; r <= d_; ++r) {
    LinearCombination acc;
    for (int c = 0; c <= d_; ++c) acc += entry(r, c) * p.numerators[static_cast<std::size_t>(c)];
    out.numerators.push_back(std::move(acc));
  }
  return out;
}

Similitude Similitude::operator*(const Similitude& rhs) const {
  if (rhs.d_ != d_) throw DomainError("dimension mismatch in product");
  std::vector<LinearCombination> out(entries_.size());
  for (int r = 0; r <= d_; ++r)
    for (int c = 0; c <= d_; ++c) {
      LinearCombination acc;
      for (int k = 0; k <= d_; ++k) acc += entry(r, k) * rhs.entry(k, c);
      out[static_cast<std::size_t>(r * (d_ + 1) + c)] = std::move(acc);
    }
  return Similitude(d_, word_.concat(rhs.word_), std::move(out));
}

bool Similitude::equals_at(const Similitude& other, const Parameter& lambda) const {
  if (other.d_ != d_) return false;
  for (std::size_t k = 0; k < entries_.size(); ++k)
    if (lambda.sign(entries_[k] - other.entries_[k]) != 0) return false;
  return true;
}

bool Similitude::preserves_simplex() const {
  for (int c = 0; c <= d_; ++c) {
    LinearCombination sum;
    for (int r = 0; r <= d_; ++r) sum += entry(r, c);
    if (!(sum == LinearCombination::constant(1))) return false;
  }
  return true;
}

Similitude generator_matrix(int i, int d) {
  if (d < 1 || i < 0 || i > d) throw DomainError("generator index out of range");
  std::vector<LinearCombination> e(static_cast<std::size_t>((d + 1) * (d + 1)));
  auto at = [&](int r, int c) -> LinearCombination& { return e[static_cast<std::size_t>(r * (d + 1) + c)]; };
  for (int c = 0; c <= d; ++c) at(i, c) = c == i ? LinearCombination::constant(1) : LinearCombination::one_minus_lambda();
  for (int r = 0; r <= d; ++r)
    if (r != i) at(r, r) = LinearCombination::monomial(1, 1);
  return Similitude(d, SymbolWord({i}), std::move(e));
}

namespace {

std::vector<LinearCombination> indicator_sums(const SymbolWord& w, int d) {
  if (w.max_digit() > d) throw DomainError("word digit exceeds simplex dimension");
  std::vector<std::vector<std::int64_t>> acc(static_cast<std::size_t>(d) + 1);
  for (std::size_t k = 0; k < w.size(); ++k) {
    auto& v = acc[static_cast<std::size_t>(w[k])];
    if (v.size() < k + 2) v.resize(k + 2, 0);
    v[k] += 1;
    v[k + 1] -= 1;
  }
  std::vector<LinearCombination> out;
  for (auto& v : acc) out.emplace_back(std::move(v));
  return out;
}

}  // namespace

Similitude compose_word(const SymbolWord& w, int d) {
  auto sums = indicator_sums(w, d);
  LinearCombination excess = LinearCombination::monomial(1, static_cast<int>(w.size()));
  std::vector<LinearCombination> e;
  e.reserve(static_cast<std::size_t>((d + 1) * (d + 1)));
  for (int r = 0; r <= d; ++r)
    for (int c = 0; c <= d; ++c) e.push_back(r == c ? sums[static_cast<std::size_t>(r)] + excess : sums[static_cast<std::size_t>(r)]);
  return Similitude(d, w, std::move(e));
}

Similitude multiply_out(const SymbolWord& w, int d) {
  if (w.empty()) return compose_word(w, d);
  Similitude acc = generator_matrix(w[0], d);
  for (std::size_t k = 1; k < w.size(); ++k) acc = acc * generator_matrix(w[k], d);
  return acc;
}

// --- regions ---------------------------------------------------------------

CornerRegion image_region(const SymbolWord& w, int d) {
  return CornerRegion{indicator_sums(w, d), static_cast<int>(w.size())};
}

HoleRegion hole_region(const SymbolWord& w, int d) {
  CornerRegion r = image_region(w, d);
  LinearCombination width = LinearCombination::one_minus_lambda().shifted(static_cast<int>(w.size()));
  HoleRegion h;
  h.level = r.level;
  h.lower = r.lower;
  for (const auto& l : r.lower) h.upper.push_back(l + width);
  return h;
}

namespace {

const LinearCombination& max_of(const LinearCombination& a, const LinearCombination& b, const Parameter& lambda) {
  return lambda.sign(a - b) >= 0 ? a : b;
}

void check_dims(std::size_t a, std::size_t b) {
  if (a != b) throw DomainError("region dimension mismatch");
}

}  // namespace

bool regions_intersect(const CornerRegion& a, const CornerRegion& b, const Parameter& lambda) {
  check_dims(a.lower.size(), b.lower.size());
  LinearCombination total;
  for (std::size_t j = 0; j < a.lower.size(); ++j) total += max_of(a.lower[j], b.lower[j], lambda);
  return lambda.sign(LinearCombination::constant(1) - total) >= 0;
}

CornerRegion intersection(const CornerRegion& a, const CornerRegion& b, const Parameter& lambda) {
  check_dims(a.lower.size(), b.lower.size());
  CornerRegion out;
  out.level = std::max(a.level, b.level);
  for (std::size_t j = 0; j < a.lower.size(); ++j) out.lower.push_back(max_of(a.lower[j], b.lower[j], lambda));
  return out;
}

bool hole_meets_region(const HoleRegion& h, const CornerRegion& r, const Parameter& lambda) {
  check_dims(h.upper.size(), r.lower.size());
  LinearCombination low_sum, high_sum;
  for (std::size_t j = 0; j < h.upper.size(); ++j) {
    const LinearCombination& a = h.lower.empty() ? r.lower[j] : max_of(h.lower[j], r.lower[j], lambda);
    if (lambda.sign(h.upper[j] - a) <= 0) return false;
    low_sum += a;
    high_sum += h.upper[j];
  }
  LinearCombination one = LinearCombination::constant(1);
  return lambda.sign(one - low_sum) >= 0 && lambda.sign(high_sum - one) > 0;
}

bool hole_is_empty(const HoleRegion& h, const Parameter& lambda) {
  LinearCombination high_sum;
  for (const auto& u : h.upper) high_sum += u;
  return lambda.sign(high_sum - LinearCombination::constant(1)) <= 0;
}

bool region_contains(const CornerRegion& outer, const CornerRegion& inner, const Parameter& lambda) {
  check_dims(outer.lower.size(), inner.lower.size());
  for (std::size_t j = 0; j < outer.lower.size(); ++j)
    if (lambda.sign(inner.lower[j] - outer.lower[j]) < 0) return false;
  return true;
}

bool same_region(const CornerRegion& a, const CornerRegion& b, const Parameter& lambda) {
  check_dims(a.lower.size(), b.lower.size());
  for (std::size_t j = 0; j < a.lower.size(); ++j)
    if (lambda.sign(a.lower[j] - b.lower[j]) != 0) return false;
  return true;
}

std::string region_key(const CornerRegion& r, const Parameter& lambda) {
  std::string out;
  for (const auto& l : r.lower) {
    std::string k = lambda.key(l);
    out += std::to_string(k.size());
    out += ':';
    out += k;
  }
  return out;
}

std::vector<std::vector<double>> region_vertices(const CornerRegion& r, const Parameter& lambda) {
  std::vector<double> low;
  double total = 0.0;
  for (const auto& l : r.lower) {
    low.push_back(l.evaluate(lambda.value()));
    total += low.back();
  }
  std::vector<std::vector<double>> out;
  for (std::size_t j = 0; j < low.size(); ++j) {
    auto v = low;
    v[j] += 1.0 - total;
    out.push_back(std::move(v));
  }
  return out;
}

std::vector<std::vector<double>> hole_vertices(const HoleRegion& h, const Parameter& lambda) {
  std::vector<double> up;
  double total = 0.0;
  for (const auto& u : h.upper) {
    up.push_back(u.evaluate(lambda.value()));
    total += up.back();
  }
  std::vector<std::vector<double>> out;
  for (std::size_t j = 0; j < up.size(); ++j) {
    auto v = up;
    v[j] = 1.0 - (total - up[j]);
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace gasket
