#include <doctest.h>

#include <deque>
#include <map>
#include <set>

#include "gasket/error.h"
#include "gasket/symbolic.h"
#include "support.h"

using namespace gasket;
using oracle::Q;

namespace {

std::vector<SymbolWord> all_words(int d, int n) {
  std::vector<SymbolWord> out{SymbolWord()};
  for (int k = 0; k < n; ++k) {
    std::vector<SymbolWord> next;
    for (const auto& w : out)
      for (int i = 0; i <= d; ++i) next.push_back(w.appended(i));
    out = std::move(next);
  }
  return out;
}

bool has_factor(const SymbolWord& w, int m) {
  for (std::size_t s = 0; s + static_cast<std::size_t>(m) < w.size(); ++s) {
    int i = w[s], j = w[s + 1];
    if (i == j) continue;
    bool run = true;
    for (int k = 1; k <= m; ++k) run = run && w[s + static_cast<std::size_t>(k)] == j;
    if (run) return true;
  }
  return false;
}

// every word reachable through x y^m <-> y x^m, by breadth-first search
std::set<SymbolWord> relation_class(const SymbolWord& w, int m) {
  std::set<SymbolWord> seen{w};
  std::deque<SymbolWord> todo{w};
  while (!todo.empty()) {
    SymbolWord cur = todo.front();
    todo.pop_front();
    std::vector<std::uint8_t> d = cur.digits();
    for (std::size_t s = 0; s + static_cast<std::size_t>(m) < d.size(); ++s) {
      std::uint8_t x = d[s], y = d[s + 1];
      if (x == y) continue;
      bool run = true;
      for (int k = 1; k <= m; ++k) run = run && d[s + static_cast<std::size_t>(k)] == y;
      if (!run) continue;
      std::vector<std::uint8_t> e = d;
      e[s] = y;
      for (int k = 1; k <= m; ++k) e[s + static_cast<std::size_t>(k)] = x;
      SymbolWord next(e);
      if (seen.insert(next).second) todo.push_back(next);
    }
  }
  return seen;
}

std::vector<int> rational_greedy(const Q& lambda, const Q& x, int n) {
  std::vector<int> a;
  Q sum = 0, p = 1;
  for (int k = 1; k <= n; ++k) {
    p *= lambda;
    if (sum + p <= x) {
      sum += p;
      a.push_back(1);
    } else {
      a.push_back(0);
    }
  }
  return a;
}

}  // namespace

TEST_CASE("greedy digits match a plain rational greedy") {
  for (Q lq : {Q(59, 100), Q(3, 5), Q(7, 10), Q(9, 10)}) {
    Parameter lambda = Parameter::rational(lq);
    for (Q x : {Q(1), Q(1, 3), Q(7, 9), Q(0)}) {
      Expansion e = greedy_expansion(lambda, x, 40);
      CHECK(e.digits == rational_greedy(lq, x, 40));
      CHECK(satisfies_greedy_bound(e));
      Q partial = oracle::eval(e.partial_sum(), lq);
      CHECK(partial <= x);
      CHECK(x - partial <= oracle::power(lq, 40) / (1 - lq));
    }
  }
}

TEST_CASE("golden expansion of one and the periodic tail") {
  Parameter w = multinacci_parameter(2);
  Expansion plain = greedy_expansion(w, Q(1), 8);
  CHECK(plain.finite);
  CHECK(plain.digits == std::vector<int>{1, 1, 0, 0, 0, 0, 0, 0});
  Expansion tail = greedy_expansion(w, Q(1), 8, TailConvention::Periodic);
  CHECK(tail.tail_applied);
  CHECK(tail.period == 2);
  CHECK(tail.digits == std::vector<int>{1, 0, 1, 0, 1, 0, 1, 0});
  Expansion tri = greedy_expansion(multinacci_parameter(3), Q(1), 9, TailConvention::Periodic);
  CHECK(tri.digits == std::vector<int>{1, 1, 0, 1, 1, 0, 1, 1, 0});
}

TEST_CASE("greedy preconditions") {
  CHECK_THROWS_AS(greedy_expansion(Parameter::rational(Q(1, 2)), Q(1), 5), DomainError);
  CHECK_THROWS_AS(greedy_expansion(Parameter::rational(Q(3, 5)), Q(3, 2), 5), DomainError);
  CHECK_THROWS_AS(greedy_expansion(Parameter::rational(Q(3, 5)), Q(-1), 5), DomainError);
}

TEST_CASE("edge addresses pick the largest start not beyond t") {
  Q lq(3, 5);
  Parameter lambda = Parameter::rational(lq);
  for (Q t : {Q(0), Q(1, 7), Q(1, 2), Q(5, 6), Q(1)}) {
    const int n = 8;
    SymbolWord w = edge_address(lambda, t, n);
    auto start = [&](const SymbolWord& v) {
      Q s = 0;
      for (std::size_t k = 0; k < v.size(); ++k)
        if (v[k] == 0) s += (1 - lq) * oracle::power(lq, static_cast<int>(k));
      return s;
    };
    CHECK(start(w) <= t);
    CHECK(t <= start(w) + oracle::power(lq, n));
    // the region of w really holds the point t p_0 + (1 - t) p_1
    std::vector<Q> p{t, 1 - t, Q(0)};
    CHECK(oracle::in_corner(p, oracle::corner(w, 2, lq)));
  }
  CHECK(point_from_address(SymbolWord(), 2).numerators.size() == 3);
}

TEST_CASE("canonical words are least in their relation class") {
  for (int m = 2; m <= 3; ++m) {
    Parameter lambda = multinacci_parameter(m);
    for (int n = 0; n <= 6; ++n) {
      for (const auto& w : all_words(2, n)) {
        auto cls = relation_class(w, m);
        SymbolWord c = canonical_word(w, m);
        CHECK(c == *cls.begin());
        // the relation is an identity of maps at omega_m
        CHECK(compose_word(c, 2).equals_at(compose_word(w, 2), lambda));
      }
    }
  }
}

TEST_CASE("equal maps at omega_m iff equal canonical words") {
  for (int m = 2; m <= 3; ++m) {
    Parameter lambda = multinacci_parameter(m);
    for (int n = 1; n <= 6; ++n) {
      std::map<std::string, SymbolWord> by_map;
      std::set<SymbolWord> canon;
      for (const auto& w : all_words(2, n)) {
        SymbolWord c = canonical_word(w, m);
        canon.insert(c);
        auto [it, fresh] = by_map.emplace(region_key(image_region(w, 2), lambda), c);
        if (!fresh) CHECK(it->second == c);
      }
      CHECK(canon.size() == by_map.size());
    }
  }
}

TEST_CASE("oriented rewriting stays in the class and removes every i > j pattern") {
  for (const auto& w : all_words(2, 7)) {
    SymbolWord r = rewrite_to_fixpoint(w, 2);
    CHECK(relation_class(w, 2).count(r) == 1);
    for (std::size_t s = 0; s + 2 < r.size(); ++s)
      CHECK(!(r[s] > r[s + 1] && r[s + 1] == r[s + 2]));
  }
}

TEST_CASE("counting sequences") {
  CountingSeq u = u_sequence(10);
  CHECK(u.values[0] == 1);
  CHECK(u.values[3] == 24);
  CHECK(u.values[10] == 17172);
  CHECK(u.recurrence_holds());
  CHECK(u.to_csv().rfind("index,value\r\n0,1\r\n1,3\r\n", 0) == 0);

  CountingSeq h2 = h_sequence(2, 6);
  CHECK(h2.values == std::vector<BigInt>{0, 3, 6, 12, 24, 48, 96});
  CountingSeq p2 = p_sequence(2, 6);
  CHECK(p2.values == std::vector<BigInt>{0, 0, 3, 3, 3, 6, 12});

  CountingSeq h3 = h_sequence(3, 8);
  CHECK(h3.values[3] == 3);
  CHECK(h3.values[4] == 6);  // 2 (h_2 + h_3)
  CHECK(h3.recurrence_holds());
  CountingSeq tampered = h3;
  tampered.values[6] += 1;
  CHECK(!tampered.recurrence_holds());
}

TEST_CASE("series division inverts multiplication") {
  std::vector<Q> num{Q(0), Q(0), Q(3), Q(-3)};
  std::vector<Q> den{Q(1), Q(-3), Q(2), Q(0), Q(1, 2)};
  auto s = series_coefficients(num, den, 20);
  REQUIRE(s.size() == 21);
  for (int k = 0; k <= 20; ++k) {
    Q acc = 0;
    for (int i = 0; i <= k && i < static_cast<int>(den.size()); ++i)
      acc += den[static_cast<std::size_t>(i)] * s[static_cast<std::size_t>(k - i)];
    Q want = k < static_cast<int>(num.size()) ? num[static_cast<std::size_t>(k)] : Q(0);
    CHECK(acc == want);
  }
  CHECK_THROWS(series_coefficients(num, {Q(0), Q(1)}, 5));
}

TEST_CASE("hole and triangle sequences equal their generating functions") {
  for (int m = 3; m <= 6; ++m) {
    auto q = hole_series(m, 30);
    auto p = triangle_series(m, 30);
    auto h = h_sequence(m, 30);
    auto t = p_sequence(m, 30);
    for (int k = 0; k <= 30; ++k) {
      CHECK(q[static_cast<std::size_t>(k)] == Q(h.values[static_cast<std::size_t>(k)]));
      CHECK(p[static_cast<std::size_t>(k)] == Q(t.values[static_cast<std::size_t>(k)]));
    }
    CHECK(gf_series_check(m, 30));
  }
}

TEST_CASE("unique-address counts equal brute-force enumeration") {
  for (int m = 2; m <= 4; ++m) {
    for (int n = 1; n <= 9; ++n) {
      long count = 0;
      for (const auto& w : all_words(2, n))
        if (!has_factor(w, m)) ++count;
      CHECK(count_unique_addresses(m, n) == count);
    }
  }
  CHECK_THROWS_AS(count_unique_addresses(2, 50, 10), ResourceLimit);
}
