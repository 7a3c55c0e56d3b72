#pragma once

// Level-n approximations of the attractor: deduplicated image regions, hole
// classification, area brackets, box counting and SVG rendering.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gasket/geometry.h"

namespace gasket {

/// Enumeration caps and worker count.
struct Limits {
  /// (d+1)^n above this raises ResourceLimit. Default 3^14.
  std::uint64_t max_words = 4782969;
  unsigned threads = 1;

  /// Defaults, with max_words overridden by GASKET_MAX_WORDS when set.
  static Limits from_env();
};

/// One deduplicated region of a level: its lexicographically least word and
/// the indices of its d+1 children in the next level.
struct LevelNode {
  SymbolWord word;
  CornerRegion region;
  std::vector<double> approx;  // lower bounds in floating point
  std::vector<std::uint32_t> children;
};

/// All levels 0..depth, built breadth-first with exact deduplication.
class LevelTower {
 public:
  static LevelTower build(const Parameter& lambda, int d, int depth, const Limits& limits = Limits::from_env());

  const Parameter& lambda() const { return lambda_; }
  int dimension() const { return d_; }
  int depth() const { return static_cast<int>(levels_.size()) - 1; }
  const std::vector<LevelNode>& level(int k) const { return levels_.at(static_cast<std::size_t>(k)); }

 private:
  LevelTower(Parameter lambda, int d) : lambda_(std::move(lambda)), d_(d) {}
  Parameter lambda_;
  int d_;
  std::vector<std::vector<LevelNode>> levels_;
};

/// The distinct regions f_w(simplex), w of length n, sorted by representative word.
struct LevelSet {
  Parameter lambda;
  int d = 2;
  int n = 0;
  std::vector<SymbolWord> words;
  std::vector<CornerRegion> regions;
};

LevelSet build_level(const Parameter& lambda, int d, int n, const Limits& limits = Limits::from_env());
LevelSet level_set(const LevelTower& tower, int n);

struct HoleCandidate {
  SymbolWord word;
  HoleRegion hole;
  bool radial = false;
  bool genuine = false;
  /// First region of the next level met by the hole (depth-first order).
  std::optional<SymbolWord> violating_region;
};

struct HoleReport {
  std::string lambda;
  int d = 2;
  int n = 0;
  /// Nonempty candidate holes of the distinct level-n regions.
  std::vector<HoleCandidate> candidates;
  /// Candidates that are empty as subsets of the simplex (lambda >= 2/3).
  std::size_t empty_candidates = 0;

  std::size_t genuine_count() const;
  std::size_t violation_count() const;
  bool genuine_are_radial() const;
  bool radial_are_genuine() const;
  /// {lambda, n, candidates, genuine, violations:[{hole_word, region_word}]}
  std::string to_json() const;
};

/// Requires tower.depth() >= n + 1.
HoleReport classify_holes(const LevelTower& tower, int n, const Limits& limits = Limits::from_env());
HoleReport classify_holes(const Parameter& lambda, int d, int n, const Limits& limits = Limits::from_env());

struct SelfSimilarityVerdict {
  bool consistent = true;
  int n_max = 0;
  /// Set on violation: level and the offending (hole, region) words.
  std::optional<int> level;
  std::optional<SymbolWord> hole_word;
  std::optional<SymbolWord> region_word;
  std::vector<HoleReport> reports;

  std::string to_json() const;
};

/// Classifies levels 0..n_max, stopping at the first level with a violation
/// unless run_all is set.
SelfSimilarityVerdict check_total_self_similarity(const Parameter& lambda, int d, int n_max,
                                                  const Limits& limits = Limits::from_env(), bool run_all = false);

struct AreaBracket {
  double lo = 0.0;
  double hi = 0.0;
};

/// Normalized area of the level-n union on a triangular grid with
/// resolution^2 cells: lo counts cells inside a single region, hi counts
/// cells meeting some region. d must be 2, resolution >= 64.
AreaBracket estimate_area(const LevelSet& level, int resolution);
AreaBracket estimate_area(const Parameter& lambda, int d, int n, int resolution,
                          const Limits& limits = Limits::from_env());

struct BoxCount {
  int resolution = 0;
  std::uint64_t occupied = 0;
};

struct BoxDimension {
  double slope = 0.0;
  std::vector<BoxCount> samples;
};

/// Cells whose interior meets the interior of some region.
std::uint64_t occupied_cells(const LevelSet& level, int resolution);

/// Least-squares slope of log N against log(resolution) for resolutions
/// round(lambda^-k), k = k_lo..k_hi.
BoxDimension box_dimension_estimate(const LevelSet& level, int k_lo = 3, int k_hi = 8);
BoxDimension box_dimension_estimate(const Parameter& lambda, int d, int n, int k_lo = 3, int k_hi = 8,
                                    const Limits& limits = Limits::from_env());

struct RenderOptions {
  int size = 800;
  std::string background = "#ffffff";
  std::string outline = "#000000";
  std::string fill = "#404040";
  bool highlight_radial_holes = false;
  std::string radial_hole_fill = "#bdbdbd";
  bool highlight_overlaps = false;
  std::string overlap_fill = "#808080";
  bool version_comment = true;
};

std::string render_svg_string(const LevelSet& level, const RenderOptions& options = {});
/// Throws IoError if the file cannot be written.
void render_svg(const LevelSet& level, const std::string& path, const RenderOptions& options = {});

}  // namespace gasket
