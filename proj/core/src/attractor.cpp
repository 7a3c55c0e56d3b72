#include "gasket/attractor.h"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <thread>
#include <unordered_map>

#include <json.hpp>

#include "gasket/error.h"

namespace gasket {

Limits Limits::from_env() {
  Limits limits;
  if (const char* env = std::getenv("GASKET_MAX_WORDS")) {
    long long v = 0;
    try {
      v = std::stoll(env);
    } catch (const std::exception&) {
    }
    if (v <= 0) throw DomainError(std::string("GASKET_MAX_WORDS is not a positive integer: ") + env);
    limits.max_words = static_cast<std::uint64_t>(v);
  }
  return limits;
}

namespace {

void check_word_cap(int d, int n, const Limits& limits) {
  std::uint64_t words = 1;
  for (int k = 0; k < n; ++k) {
    if (words > limits.max_words / static_cast<std::uint64_t>(d + 1) + 1) {
      words = limits.max_words + 1;
      break;
    }
    words *= static_cast<std::uint64_t>(d + 1);
  }
  if (words > limits.max_words)
    throw ResourceLimit(std::to_string(d + 1) + "^" + std::to_string(n) + " words exceed the cap of " +
                        std::to_string(limits.max_words) + " (set GASKET_MAX_WORDS to raise it)");
}

unsigned worker_count(const Limits& limits, std::size_t jobs) {
  unsigned t = std::max(1u, limits.threads);
  return static_cast<unsigned>(std::min<std::size_t>(t, std::max<std::size_t>(1, jobs)));
}

}  // namespace

LevelTower LevelTower::build(const Parameter& lambda, int d, int depth, const Limits& limits) {
  if (d < 1) throw DomainError("simplex dimension must be >= 1");
  if (depth < 0) throw DomainError("level must be >= 0");
  double lv = lambda.value();
  if (!(lv > 0.0 && lv < 1.0)) throw DomainError("contraction ratio must lie in (0, 1)");
  check_word_cap(d, depth, limits);

  LevelTower tower(lambda, d);
  auto dims = static_cast<std::size_t>(d) + 1;
  LevelNode root;
  root.region.lower.assign(dims, LinearCombination());
  root.region.level = 0;
  root.approx.assign(dims, 0.0);
  tower.levels_.emplace_back();
  tower.levels_[0].push_back(std::move(root));

  std::vector<std::vector<std::string>> keys(1, std::vector<std::string>(dims, lambda.key(LinearCombination())));
  for (int k = 0; k < depth; ++k) {
    LinearCombination step = LinearCombination::monomial(1, k) - LinearCombination::monomial(1, k + 1);
    double step_d = step.evaluate(lv);
    std::vector<LevelNode> next;
    std::vector<std::vector<std::string>> next_keys;
    std::unordered_map<std::string, std::uint32_t> index;
    auto& cur = tower.levels_[static_cast<std::size_t>(k)];
    for (std::size_t p = 0; p < cur.size(); ++p) {
      cur[p].children.resize(dims);
      for (int i = 0; i <= d; ++i) {
        auto iu = static_cast<std::size_t>(i);
        std::vector<std::string> child_keys = keys[p];
        LinearCombination bound = cur[p].region.lower[iu] + step;
        child_keys[iu] = lambda.key(bound);
        std::string joined;
        for (const auto& s : child_keys) {
          joined += std::to_string(s.size());
          joined += ':';
          joined += s;
        }
        auto [it, inserted] = index.try_emplace(std::move(joined), static_cast<std::uint32_t>(next.size()));
        if (inserted) {
          LevelNode child;
          child.word = cur[p].word.appended(i);
          child.region.lower = cur[p].region.lower;
          child.region.lower[iu] = std::move(bound);
          child.region.level = k + 1;
          child.approx = cur[p].approx;
          child.approx[iu] += step_d;
          next.push_back(std::move(child));
          next_keys.push_back(std::move(child_keys));
        }
        cur[p].children[iu] = it->second;
      }
    }
    keys = std::move(next_keys);
    tower.levels_.push_back(std::move(next));
  }
  return tower;
}

LevelSet level_set(const LevelTower& tower, int n) {
  LevelSet out{tower.lambda(), tower.dimension(), n, {}, {}};
  for (const auto& node : tower.level(n)) {
    out.words.push_back(node.word);
    out.regions.push_back(node.region);
  }
  return out;
}

LevelSet build_level(const Parameter& lambda, int d, int n, const Limits& limits) {
  return level_set(LevelTower::build(lambda, d, n, limits), n);
}

// --- holes -----------------------------------------------------------------

namespace {

constexpr double kFilter = 1e-10;

// 1 = meets, 0 = disjoint, -1 = undecided in floating point.
int meets_filter(const std::vector<double>& hl, const std::vector<double>& hu, const std::vector<double>& rl) {
  double low = 0.0, high = 0.0;
  bool certain = true;
  for (std::size_t j = 0; j < hu.size(); ++j) {
    double a = std::max(hl[j], rl[j]);
    double gap = hu[j] - a;
    if (gap < -kFilter) return 0;
    if (gap <= kFilter) certain = false;
    low += a;
    high += hu[j];
  }
  if (low > 1.0 + kFilter || high < 1.0 - kFilter) return 0;
  if (low > 1.0 - kFilter || high < 1.0 + kFilter) certain = false;
  return certain ? 1 : -1;
}

struct HoleSearch {
  const LevelTower& tower;
  int n;
  std::vector<std::vector<std::uint32_t>> stamp;
  std::uint32_t epoch = 0;

  HoleSearch(const LevelTower& t, int level) : tower(t), n(level) {
    for (int k = 0; k <= n + 1; ++k) stamp.emplace_back(t.level(k).size(), 0);
  }

  bool meets(const HoleRegion& h, const std::vector<double>& hl, const std::vector<double>& hu, const LevelNode& node) {
    int f = meets_filter(hl, hu, node.approx);
    if (f >= 0) return f == 1;
    return hole_meets_region(h, node.region, tower.lambda());
  }

  void run(HoleCandidate& cand) {
    ++epoch;
    const Parameter& lambda = tower.lambda();
    std::vector<double> hl, hu;
    for (const auto& c : cand.hole.lower) hl.push_back(c.evaluate(lambda.value()));
    for (const auto& c : cand.hole.upper) hu.push_back(c.evaluate(lambda.value()));
    std::vector<std::pair<int, std::uint32_t>> stack{{0, 0}};
    while (!stack.empty()) {
      auto [k, idx] = stack.back();
      stack.pop_back();
      const LevelNode& node = tower.level(k)[idx];
      if (!meets(cand.hole, hl, hu, node)) continue;
      if (k == n + 1) {
        cand.violating_region = node.word;
        cand.genuine = false;
        return;
      }
      // push in reverse so that digit 0 is explored first
      for (auto c = node.children.rbegin(); c != node.children.rend(); ++c) {
        auto& s = stamp[static_cast<std::size_t>(k + 1)][*c];
        if (s == epoch) continue;
        s = epoch;
        stack.emplace_back(k + 1, *c);
      }
    }
    cand.genuine = true;
  }
};

}  // namespace

std::size_t HoleReport::genuine_count() const {
  return static_cast<std::size_t>(std::count_if(candidates.begin(), candidates.end(), [](const HoleCandidate& c) { return c.genuine; }));
}

std::size_t HoleReport::violation_count() const { return candidates.size() - genuine_count(); }

bool HoleReport::genuine_are_radial() const {
  return std::all_of(candidates.begin(), candidates.end(), [](const HoleCandidate& c) { return !c.genuine || c.radial; });
}

bool HoleReport::radial_are_genuine() const {
  return std::all_of(candidates.begin(), candidates.end(), [](const HoleCandidate& c) { return !c.radial || c.genuine; });
}

namespace {

nlohmann::ordered_json report_json(const HoleReport& r) {
  nlohmann::ordered_json j;
  j["lambda"] = r.lambda;
  j["d"] = r.d;
  j["n"] = r.n;
  auto cand = nlohmann::ordered_json::array();
  auto gen = nlohmann::ordered_json::array();
  auto viol = nlohmann::ordered_json::array();
  for (const auto& c : r.candidates) {
    cand.push_back(c.word.to_string());
    if (c.genuine) gen.push_back(c.word.to_string());
    if (c.violating_region)
      viol.push_back({{"hole_word", c.word.to_string()}, {"region_word", c.violating_region->to_string()}});
  }
  j["candidates"] = std::move(cand);
  j["genuine"] = std::move(gen);
  j["violations"] = std::move(viol);
  j["empty_candidates"] = r.empty_candidates;
  return j;
}

}  // namespace

std::string HoleReport::to_json() const { return report_json(*this).dump(2); }

HoleReport classify_holes(const LevelTower& tower, int n, const Limits& limits) {
  if (n < 0) throw DomainError("level must be >= 0");
  if (tower.depth() < n + 1) throw DomainError("tower must extend one level past the holes");
  HoleReport report;
  report.lambda = tower.lambda().label();
  report.d = tower.dimension();
  report.n = n;
  for (const auto& node : tower.level(n)) {
    HoleCandidate c;
    c.word = node.word;
    c.hole = hole_region(node.word, tower.dimension());
    if (hole_is_empty(c.hole, tower.lambda())) {
      ++report.empty_candidates;
      continue;
    }
    c.radial = node.word.is_constant();
    report.candidates.push_back(std::move(c));
  }

  unsigned workers = worker_count(limits, report.candidates.size());
  auto work = [&](unsigned w) {
    HoleSearch search(tower, n);
    for (std::size_t i = w; i < report.candidates.size(); i += workers) search.run(report.candidates[i]);
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(workers);
    for (unsigned w = 0; w < workers; ++w)
      pool.emplace_back([&, w] {
        try {
          work(w);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    for (auto& t : pool) t.join();
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
  }
  return report;
}

HoleReport classify_holes(const Parameter& lambda, int d, int n, const Limits& limits) {
  check_word_cap(d, n, limits);
  return classify_holes(LevelTower::build(lambda, d, n + 1, limits), n, limits);
}

std::string SelfSimilarityVerdict::to_json() const {
  nlohmann::ordered_json j;
  j["verdict"] = consistent ? "consistent" : "violation";
  j["n_max"] = n_max;
  if (!consistent) {
    j["level"] = *level;
    j["hole_word"] = hole_word->to_string();
    j["region_word"] = region_word->to_string();
  }
  auto levels = nlohmann::ordered_json::array();
  for (const auto& r : reports) {
    nlohmann::ordered_json e;
    e["n"] = r.n;
    e["candidates"] = r.candidates.size();
    e["genuine"] = r.genuine_count();
    e["violations"] = r.violation_count();
    e["genuine_are_radial"] = r.genuine_are_radial();
    e["radial_are_genuine"] = r.radial_are_genuine();
    levels.push_back(std::move(e));
  }
  j["levels"] = std::move(levels);
  return j.dump(2);
}

SelfSimilarityVerdict check_total_self_similarity(const Parameter& lambda, int d, int n_max, const Limits& limits,
                                                  bool run_all) {
  if (n_max < 0) throw DomainError("n_max must be >= 0");
  if (lambda.sign_minus_rational(LinearCombination::monomial(1, 1), Rational(1, 2)) <= 0 ||
      lambda.sign_minus_rational(LinearCombination::monomial(1, 1), Rational(2, 3)) >= 0)
    throw DomainError("total self-similarity check needs lambda in (1/2, 2/3)");
  LevelTower tower = LevelTower::build(lambda, d, n_max + 1, limits);
  SelfSimilarityVerdict verdict;
  verdict.n_max = n_max;
  for (int n = 0; n <= n_max; ++n) {
    HoleReport report = classify_holes(tower, n, limits);
    if (verdict.consistent) {
      for (const auto& c : report.candidates) {
        if (c.violating_region) {
          verdict.consistent = false;
          verdict.level = n;
          verdict.hole_word = c.word;
          verdict.region_word = *c.violating_region;
          break;
        }
      }
    }
    verdict.reports.push_back(std::move(report));
    if (!verdict.consistent && !run_all) break;
  }
  return verdict;
}

// --- grid estimates --------------------------------------------------------
//
// Upward cell (a, b, c), a + b + c = r - 1, is {x >= (a, b, c) / r}.
// Downward cell (a, b, c), a + b + c = r - 2, is {x <= (a+1, b+1, c+1) / r}.

namespace {

constexpr double kGridMargin = 1e-9;

struct Grid {
  int r;
  std::vector<std::uint8_t> up;    // indexed a * r + b
  std::vector<std::uint8_t> down;  // indexed a * r + b
  explicit Grid(int res)
      : r(res), up(static_cast<std::size_t>(res) * static_cast<std::size_t>(res), 0),
        down(static_cast<std::size_t>(res) * static_cast<std::size_t>(res), 0) {}
};

std::vector<std::vector<double>> region_bounds(const LevelSet& level) {
  std::vector<std::vector<double>> out;
  for (const auto& reg : level.regions) {
    std::vector<double> l;
    for (const auto& c : reg.lower) l.push_back(c.evaluate(level.lambda.value()));
    out.push_back(std::move(l));
  }
  return out;
}

// Cell corners are rationals a / r; every comparison against a bound L_j is
// decided in floating point when the gap exceeds kGridMargin and exactly
// otherwise.
class CellTest {
 public:
  CellTest(const CornerRegion& region, const std::vector<double>& approx, const Parameter& lambda, int r)
      : region_(region), L_(approx), lambda_(lambda), r_(r) {}

  // sign of a / r - L_j
  int cmp(int a, std::size_t j) const {
    double diff = a / static_cast<double>(r_) - L_[j];
    if (diff > kGridMargin) return 1;
    if (diff < -kGridMargin) return -1;
    return -lambda_.sign_minus_rational(region_.lower[j], Rational(a, r_));
  }

  // sign of sum_j max(a_j / r, L_j) - 1
  int excess(const int a[3]) const {
    double s = 0;
    for (std::size_t j = 0; j < 3; ++j) s += std::max(a[j] / static_cast<double>(r_), L_[j]);
    if (s > 1.0 + kGridMargin) return 1;
    if (s < 1.0 - kGridMargin) return -1;
    LinearCombination bounds;
    Rational corners = 0;
    for (std::size_t j = 0; j < 3; ++j) {
      if (cmp(a[j], j) >= 0)
        corners += Rational(a[j], r_);
      else
        bounds += region_.lower[j];
    }
    return lambda_.sign_minus_rational(bounds, Rational(1) - corners);
  }

 private:
  const CornerRegion& region_;
  const std::vector<double>& L_;
  const Parameter& lambda_;
  int r_;
};

// mode 0: area marking (1 = meets the closed region, 2 = inside it);
// mode 1: the cell interior meets the region interior.
void mark_region(Grid& g, const CornerRegion& region, const std::vector<double>& L, const Parameter& lambda,
                 int mode) {
  const int r = g.r;
  const double rd = r;
  CellTest t(region, L, lambda, r);
  double side = 1.0 - (L[0] + L[1] + L[2]);
  auto lo_idx = [&](double v) { return std::max(0, static_cast<int>(std::floor(v * rd)) - 1); };
  auto hi_idx = [&](double v) { return std::min(r - 1, static_cast<int>(std::ceil((v + side) * rd)) + 1); };
  int a0 = lo_idx(L[0]), a1 = hi_idx(L[0]);
  int b0 = lo_idx(L[1]), b1 = hi_idx(L[1]);
  for (int a = a0; a <= a1; ++a) {
    for (int b = b0; b <= b1; ++b) {
      auto idx = static_cast<std::size_t>(a) * static_cast<std::size_t>(r) + static_cast<std::size_t>(b);
      int c = r - 1 - a - b;
      if (c >= 0) {
        const int x[3] = {a, b, c};
        std::uint8_t state = 0;
        if (mode == 0) {
          if (t.cmp(x[0], 0) >= 0 && t.cmp(x[1], 1) >= 0 && t.cmp(x[2], 2) >= 0)
            state = 2;
          else if (t.excess(x) <= 0)
            state = 1;
        } else if (t.excess(x) < 0) {
          state = 1;
        }
        g.up[idx] = std::max(g.up[idx], state);
      }
      c = r - 2 - a - b;
      if (c >= 0) {
        // {x <= (a+1, b+1, c+1) / r}; coordinate j ranges over [a_j, a_j + 1] / r
        const int y[3] = {a, b, c};
        std::uint8_t state = 0;
        if (mode == 0) {
          if (t.cmp(y[0], 0) >= 0 && t.cmp(y[1], 1) >= 0 && t.cmp(y[2], 2) >= 0)
            state = 2;
          else if (t.cmp(y[0] + 1, 0) >= 0 && t.cmp(y[1] + 1, 1) >= 0 && t.cmp(y[2] + 1, 2) >= 0)
            state = 1;
        } else if (t.cmp(y[0] + 1, 0) > 0 && t.cmp(y[1] + 1, 1) > 0 && t.cmp(y[2] + 1, 2) > 0) {
          state = 1;
        }
        g.down[idx] = std::max(g.down[idx], state);
      }
    }
  }
}

void mark_all(Grid& g, const LevelSet& level, int mode) {
  auto bounds = region_bounds(level);
  for (std::size_t k = 0; k < bounds.size(); ++k) mark_region(g, level.regions[k], bounds[k], level.lambda, mode);
}

void require_planar(const LevelSet& level) {
  if (level.d != 2) throw DomainError("grid estimates are implemented for d = 2 only");
}

}  // namespace

AreaBracket estimate_area(const LevelSet& level, int resolution) {
  require_planar(level);
  if (resolution < 64) throw DomainError("area estimation needs resolution >= 64");
  if (resolution > 16384) throw ResourceLimit("area resolution above 16384");
  Grid g(resolution);
  mark_all(g, level, 0);
  std::uint64_t inside = 0, meets = 0;
  for (auto s : g.up) {
    inside += s == 2;
    meets += s >= 1;
  }
  for (auto s : g.down) {
    inside += s == 2;
    meets += s >= 1;
  }
  double cells = static_cast<double>(resolution) * static_cast<double>(resolution);
  return {static_cast<double>(inside) / cells, static_cast<double>(meets) / cells};
}

AreaBracket estimate_area(const Parameter& lambda, int d, int n, int resolution, const Limits& limits) {
  if (d != 2) throw DomainError("grid estimates are implemented for d = 2 only");
  if (resolution < 64) throw DomainError("area estimation needs resolution >= 64");
  return estimate_area(build_level(lambda, d, n, limits), resolution);
}

std::uint64_t occupied_cells(const LevelSet& level, int resolution) {
  require_planar(level);
  if (resolution < 1) throw DomainError("resolution must be positive");
  if (resolution > 16384) throw ResourceLimit("grid resolution above 16384");
  Grid g(resolution);
  mark_all(g, level, 1);
  std::uint64_t n = 0;
  for (auto s : g.up) n += s;
  for (auto s : g.down) n += s;
  return n;
}

BoxDimension box_dimension_estimate(const LevelSet& level, int k_lo, int k_hi) {
  require_planar(level);
  if (k_lo < 1 || k_hi <= k_lo) throw DomainError("need 1 <= k_lo < k_hi");
  BoxDimension out;
  double lv = level.lambda.value();
  for (int k = k_lo; k <= k_hi; ++k) {
    int r = static_cast<int>(std::lround(std::pow(lv, -k)));
    if (!out.samples.empty() && out.samples.back().resolution == r) continue;
    out.samples.push_back({r, occupied_cells(level, r)});
  }
  if (out.samples.size() < 2) throw DomainError("box-counting range yields fewer than two resolutions");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  double cnt = static_cast<double>(out.samples.size());
  for (const auto& s : out.samples) {
    double x = std::log(static_cast<double>(s.resolution));
    double y = std::log(static_cast<double>(s.occupied));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  out.slope = (cnt * sxy - sx * sy) / (cnt * sxx - sx * sx);
  return out;
}

BoxDimension box_dimension_estimate(const Parameter& lambda, int d, int n, int k_lo, int k_hi, const Limits& limits) {
  if (d != 2) throw DomainError("grid estimates are implemented for d = 2 only");
  return box_dimension_estimate(build_level(lambda, d, n, limits), k_lo, k_hi);
}

}  // namespace gasket
