#include "gasket/symbolic.h"

#include <deque>
#include <set>
#include <sstream>

#include <json.hpp>

#include "gasket/error.h"

namespace gasket {

// --- expansions ------------------------------------------------------------

LinearCombination Expansion::partial_sum() const {
  std::vector<std::int64_t> c(digits.size() + 1, 0);
  for (std::size_t k = 0; k < digits.size(); ++k) c[k + 1] = digits[k];
  return LinearCombination(std::move(c));
}

std::string Expansion::to_json() const {
  nlohmann::ordered_json j;
  j["lambda"] = lambda.label();
  j["x"] = to_string(x);
  j["digits"] = digits;
  j["finite"] = finite;
  j["tail_applied"] = tail_applied;
  if (tail_applied) j["period"] = period;
  return j.dump();
}

Expansion greedy_expansion(const Parameter& lambda, const Rational& x, int n_digits, TailConvention tail) {
  LinearCombination lam = LinearCombination::monomial(1, 1);
  if (lambda.sign_minus_rational(lam, Rational(1, 2)) <= 0 || lambda.sign_minus_rational(lam, Rational(1)) >= 0)
    throw DomainError("greedy expansion needs lambda in (1/2, 1)");
  if (x < 0 || x > 1) throw DomainError("greedy expansion needs x in [0, 1]");
  if (n_digits < 0) throw DomainError("digit count must be >= 0");

  Expansion e{lambda, x, {}, false, false, 0};
  LinearCombination sum;
  int last_one = 0;
  for (int k = 1; k <= n_digits; ++k) {
    if (e.finite) {
      e.digits.push_back(0);
      continue;
    }
    LinearCombination trial = sum + LinearCombination::monomial(1, k);
    int s = lambda.sign_minus_rational(trial, x);
    if (s <= 0) {
      e.digits.push_back(1);
      sum = std::move(trial);
      last_one = k;
      if (s == 0) e.finite = true;
    } else {
      e.digits.push_back(0);
    }
  }
  if (!e.finite && lambda.sign_minus_rational(sum, x) == 0) e.finite = true;

  if (tail == TailConvention::Periodic && e.finite && last_one > 0) {
    std::vector<int> block(e.digits.begin(), e.digits.begin() + last_one);
    block.back() = 0;
    for (int k = 0; k < n_digits; ++k) e.digits[static_cast<std::size_t>(k)] = block[static_cast<std::size_t>(k) % block.size()];
    e.tail_applied = true;
    e.period = last_one;
  }
  return e;
}

bool satisfies_greedy_bound(const Expansion& e) {
  auto n_total = static_cast<int>(e.digits.size());
  LinearCombination tail;
  for (int n = n_total - 1; n >= 0; --n) {
    // tail = sum_{k=n+1}^{N} a_k lambda^k
    if (e.digits[static_cast<std::size_t>(n)] != 0) tail += LinearCombination::monomial(1, n + 1);
    if (e.lambda.sign(tail - LinearCombination::monomial(1, n)) > 0) return false;
  }
  return true;
}

SymbolWord edge_address(const Parameter& lambda, const Rational& t, int n) {
  if (t < 0 || t > 1) throw DomainError("edge parameter must lie in [0, 1]");
  if (n < 0) throw DomainError("address length must be >= 0");
  std::vector<std::uint8_t> w;
  LinearCombination sum;
  LinearCombination one_minus = LinearCombination::one_minus_lambda();
  for (int k = 0; k < n; ++k) {
    LinearCombination trial = sum + LinearCombination::monomial(1, k);
    if (lambda.sign_minus_rational(one_minus * trial, t) <= 0) {
      sum = std::move(trial);
      w.push_back(0);
    } else {
      w.push_back(1);
    }
  }
  return SymbolWord(std::move(w));
}

BarycentricPoint point_from_address(const SymbolWord& w, int d) {
  if (w.empty()) return BarycentricPoint::barycenter(d);
  return compose_word(w, d).apply(BarycentricPoint::barycenter(d));
}

// --- word relations --------------------------------------------------------

namespace {

// Position p holds x y^m with x != y.
bool relation_at(const std::vector<std::uint8_t>& w, std::size_t p, std::size_t m) {
  if (p + m >= w.size()) return false;
  if (w[p] == w[p + 1]) return false;
  for (std::size_t k = 2; k <= m; ++k)
    if (w[p + k] != w[p + 1]) return false;
  return true;
}

void swap_at(std::vector<std::uint8_t>& w, std::size_t p, std::size_t m) {
  std::uint8_t x = w[p], y = w[p + 1];
  w[p] = y;
  for (std::size_t k = 1; k <= m; ++k) w[p + k] = x;
}

}  // namespace

SymbolWord canonical_word(const SymbolWord& w, int m, std::size_t max_class) {
  if (m < 1) throw DomainError("relation exponent must be >= 1");
  auto mm = static_cast<std::size_t>(m);
  std::set<std::vector<std::uint8_t>> seen{w.digits()};
  std::deque<std::vector<std::uint8_t>> queue{w.digits()};
  while (!queue.empty()) {
    auto cur = std::move(queue.front());
    queue.pop_front();
    for (std::size_t p = 0; p + mm < cur.size(); ++p) {
      if (!relation_at(cur, p, mm)) continue;
      auto next = cur;
      swap_at(next, p, mm);
      if (seen.insert(next).second) {
        if (seen.size() > max_class) throw ResourceLimit("word class exceeds " + std::to_string(max_class) + " words");
        queue.push_back(std::move(next));
      }
    }
  }
  return SymbolWord(*seen.begin());
}

SymbolWord rewrite_to_fixpoint(const SymbolWord& w, int m) {
  if (m < 1) throw DomainError("relation exponent must be >= 1");
  auto mm = static_cast<std::size_t>(m);
  std::vector<std::uint8_t> cur = w.digits();
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t p = 0; p + mm < cur.size(); ++p) {
      if (relation_at(cur, p, mm) && cur[p] > cur[p + 1]) {
        swap_at(cur, p, mm);
        changed = true;
        break;
      }
    }
  }
  return SymbolWord(std::move(cur));
}

// --- counting sequences ----------------------------------------------------

std::string CountingSeq::name() const {
  switch (kind) {
    case SequenceKind::U:
      return "u";
    case SequenceKind::H:
      return "h";
    case SequenceKind::P:
      return "p";
  }
  return "?";
}

bool CountingSeq::recurrence_holds() const {
  auto at = [&](long k) -> BigInt { return k < 0 ? BigInt(0) : values[static_cast<std::size_t>(k)]; };
  long size = static_cast<long>(values.size());
  CountingSeq h;
  if (kind == SequenceKind::P && m > 2 && size > 0) h = h_sequence(m, static_cast<int>(size - 1));
  for (long k = 0; k < size; ++k) {
    if (values[static_cast<std::size_t>(k)] < 0) return false;
    BigInt expect;
    switch (kind) {
      case SequenceKind::U:
        if (k < 3) continue;
        expect = 3 * at(k - 1) - 3 * at(k - 3);
        break;
      case SequenceKind::H:
        if (m == 2) {
          if (k < 2) continue;
          expect = 2 * at(k - 1);
        } else {
          if (k <= m) continue;
          expect = 0;
          for (long i = k - m + 1; i <= k - 1; ++i) expect += at(i);
          expect *= 2;
        }
        break;
      case SequenceKind::P:
        if (m == 2) {
          if (k < 5) continue;
          expect = 2 * at(k - 1);
        } else {
          if (k <= m + 1) continue;
          expect = h.values[static_cast<std::size_t>(k - m)];
          BigInt inner = 0;
          for (long i = k - m + 1; i <= k - 2; ++i) inner += h.values[static_cast<std::size_t>(i)];
          expect += 3 * inner;
        }
        break;
    }
    if (values[static_cast<std::size_t>(k)] != expect) return false;
  }
  return true;
}

std::string CountingSeq::to_csv() const {
  std::ostringstream os;
  os << "index,value\r\n";
  for (std::size_t k = 0; k < values.size(); ++k) os << k << ',' << values[k].get_str() << "\r\n";
  return os.str();
}

CountingSeq u_sequence(int n_max) {
  if (n_max < 0) throw DomainError("n_max must be >= 0");
  CountingSeq s{SequenceKind::U, 2, {}};
  const long seeds[3] = {1, 3, 9};
  for (int n = 0; n <= n_max; ++n) {
    if (n < 3) {
      s.values.emplace_back(seeds[n]);
    } else {
      auto k = static_cast<std::size_t>(n);
      s.values.push_back(3 * s.values[k - 1] - 3 * s.values[k - 3]);
    }
  }
  return s;
}

CountingSeq h_sequence(int m, int k_max) {
  if (m < 2) throw DomainError("h_sequence needs m >= 2");
  if (k_max < 0) throw DomainError("k_max must be >= 0");
  CountingSeq s{SequenceKind::H, m, {}};
  for (int k = 0; k <= k_max; ++k) {
    if (m == 2) {
      s.values.push_back(k == 0 ? BigInt(0) : BigInt(3) << static_cast<mp_bitcnt_t>(k - 1));
    } else if (k < m) {
      s.values.emplace_back(0);
    } else if (k == m) {
      s.values.emplace_back(3);
    } else {
      BigInt acc = 0;
      for (int i = k - m + 1; i <= k - 1; ++i) acc += s.values[static_cast<std::size_t>(i)];
      s.values.push_back(2 * acc);
    }
  }
  return s;
}

CountingSeq p_sequence(int m, int k_max) {
  if (m < 2) throw DomainError("p_sequence needs m >= 2");
  if (k_max < 0) throw DomainError("k_max must be >= 0");
  CountingSeq s{SequenceKind::P, m, {}};
  CountingSeq h = h_sequence(m, k_max);
  for (int k = 0; k <= k_max; ++k) {
    if (m == 2) {
      if (k < 2) {
        s.values.emplace_back(0);
      } else if (k < 4) {
        s.values.emplace_back(3);
      } else {
        s.values.push_back(BigInt(3) << static_cast<mp_bitcnt_t>(k - 4));
      }
    } else if (k < m) {
      s.values.emplace_back(0);
    } else if (k <= m + 1) {
      s.values.emplace_back(3);
    } else {
      BigInt inner = 0;
      for (int i = k - m + 1; i <= k - 2; ++i) inner += h.values[static_cast<std::size_t>(i)];
      s.values.push_back(h.values[static_cast<std::size_t>(k - m)] + 3 * inner);
    }
  }
  return s;
}

std::vector<Rational> series_coefficients(const std::vector<Rational>& num, const std::vector<Rational>& den, int k_max) {
  if (den.empty() || den[0] == 0) throw DomainError("series division needs den(0) != 0");
  if (k_max < 0) throw DomainError("k_max must be >= 0");
  std::vector<Rational> c;
  for (int k = 0; k <= k_max; ++k) {
    auto ku = static_cast<std::size_t>(k);
    Rational acc = ku < num.size() ? num[ku] : Rational(0);
    for (std::size_t i = 1; i <= ku && i < den.size(); ++i) acc -= den[i] * c[ku - i];
    c.push_back(acc / den[0]);
  }
  return c;
}

namespace {

std::vector<Rational> gf_denominator(int m) {
  std::vector<Rational> den(static_cast<std::size_t>(m) + 1, Rational(0));
  den[0] = 1;
  den[1] = -3;
  den[static_cast<std::size_t>(m)] += 2;
  return den;
}

}  // namespace

std::vector<Rational> hole_series(int m, int k_max) {
  if (m < 2) throw DomainError("generating functions need m >= 2");
  std::vector<Rational> num(static_cast<std::size_t>(m) + 2, Rational(0));
  num[static_cast<std::size_t>(m)] = 3;
  num[static_cast<std::size_t>(m) + 1] = -3;
  return series_coefficients(num, gf_denominator(m), k_max);
}

std::vector<Rational> triangle_series(int m, int k_max) {
  if (m < 2) throw DomainError("generating functions need m >= 2");
  std::vector<Rational> num(2 * static_cast<std::size_t>(m) + 2, Rational(0));
  num[static_cast<std::size_t>(m)] = 3;
  num[static_cast<std::size_t>(m) + 1] = -6;
  num[2 * static_cast<std::size_t>(m) + 1] = 3;
  return series_coefficients(num, gf_denominator(m), k_max);
}

bool gf_series_check(int m, int k_max) {
  if (m < 3) throw DomainError("the generating-function identities are stated for m >= 3");
  auto q = hole_series(m, k_max);
  auto p = triangle_series(m, k_max);
  auto h = h_sequence(m, k_max);
  auto t = p_sequence(m, k_max);
  for (int k = 0; k <= k_max; ++k) {
    auto ku = static_cast<std::size_t>(k);
    if (q[ku] != Rational(h.values[ku]) || p[ku] != Rational(t.values[ku])) return false;
  }
  return true;
}

BigInt count_unique_addresses(int m, int n, int max_n) {
  if (m < 1) throw DomainError("pattern exponent must be >= 1");
  if (n < 1) throw DomainError("word length must be >= 1");
  if (n > max_n) throw ResourceLimit("word length " + std::to_string(n) + " above cap " + std::to_string(max_n));
  // state (j, 0): a run of j that started the word (unrestricted length);
  // state (j, l), 1 <= l < m: a run of length l preceded by another symbol.
  const int symbols = 3;
  auto idx = [&](int j, int l) { return static_cast<std::size_t>(j * m + l); };
  std::vector<BigInt> cur(static_cast<std::size_t>(symbols * m), BigInt(0));
  for (int j = 0; j < symbols; ++j) cur[idx(j, 0)] = 1;
  for (int step = 1; step < n; ++step) {
    std::vector<BigInt> next(cur.size(), BigInt(0));
    for (int j = 0; j < symbols; ++j) {
      for (int l = 0; l < m; ++l) {
        const BigInt& v = cur[idx(j, l)];
        if (v == 0) continue;
        if (l == 0) {
          next[idx(j, 0)] += v;
        } else if (l + 1 < m) {
          next[idx(j, l + 1)] += v;
        }
        if (m > 1) {
          for (int k = 0; k < symbols; ++k)
            if (k != j) next[idx(k, 1)] += v;
        }
      }
    }
    cur = std::move(next);
  }
  BigInt total = 0;
  for (const auto& v : cur) total += v;
  return total;
}

}  // namespace gasket
