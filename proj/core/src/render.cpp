#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "gasket/attractor.h"
#include "gasket/error.h"

namespace gasket {

namespace {

// Vertex k of the triangle sits at radius 2/3, angle 90 + 120k degrees.
struct Frame {
  double px[3];
  double py[3];
  double scale;
  double offset;

  explicit Frame(int size) {
    const double pi = std::acos(-1.0);
    for (int k = 0; k < 3; ++k) {
      double t = pi / 2.0 + 2.0 * pi * k / 3.0;
      px[k] = 2.0 / 3.0 * std::cos(t);
      py[k] = 2.0 / 3.0 * std::sin(t);
    }
    scale = size / 1.5;
    offset = size / 2.0;
  }

  std::pair<double, double> map(const std::vector<double>& x) const {
    double cx = 0.0, cy = 0.0;
    for (int k = 0; k < 3; ++k) {
      cx += x[static_cast<std::size_t>(k)] * px[k];
      cy += x[static_cast<std::size_t>(k)] * py[k];
    }
    // the triangle spans y in [-1/3, 2/3]; center that span
    return {offset + scale * cx, offset - scale * (cy - 1.0 / 6.0)};
  }
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

std::string path_of(const Frame& f, const std::vector<std::vector<double>>& verts) {
  std::string d;
  for (std::size_t k = 0; k < verts.size(); ++k) {
    auto [x, y] = f.map(verts[k]);
    d += (k == 0 ? "M" : " L");
    d += fmt(x) + " " + fmt(y);
  }
  return d + " Z";
}

}  // namespace

std::string render_svg_string(const LevelSet& level, const RenderOptions& options) {
  if (level.d != 2) throw DomainError("rendering supports d = 2 only");
  if (options.size < 16) throw DomainError("image size too small");
  Frame frame(options.size);
  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << options.size << "\" height=\""
     << options.size << "\" viewBox=\"0 0 " << options.size << " " << options.size << "\">\n";
  if (options.version_comment) os << "<!-- gasket 0.1.0 -->\n";
  os << "<!-- lambda=" << level.lambda.label() << " n=" << level.n << " regions=" << level.regions.size() << " -->\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"" << options.background << "\"/>\n";

  std::vector<std::vector<double>> corners{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  os << "<path d=\"" << path_of(frame, corners) << "\" fill=\"none\" stroke=\"" << options.outline
     << "\" stroke-width=\"1\"/>\n";

  os << "<g fill=\"" << options.fill << "\" fill-rule=\"nonzero\" stroke=\"none\">\n";
  for (const auto& r : level.regions) os << "<path d=\"" << path_of(frame, region_vertices(r, level.lambda)) << "\"/>\n";
  os << "</g>\n";

  if (options.highlight_overlaps) {
    os << "<g fill=\"" << options.overlap_fill << "\" stroke=\"none\">\n";
    for (int i = 0; i < 3; ++i)
      for (int j = i + 1; j < 3; ++j) {
        CornerRegion a = image_region(SymbolWord({i}), 2);
        CornerRegion b = image_region(SymbolWord({j}), 2);
        if (!regions_intersect(a, b, level.lambda)) continue;
        os << "<path d=\"" << path_of(frame, region_vertices(intersection(a, b, level.lambda), level.lambda)) << "\"/>\n";
      }
    os << "</g>\n";
  }

  if (options.highlight_radial_holes) {
    os << "<g fill=\"" << options.radial_hole_fill << "\" stroke=\"none\">\n";
    for (int k = 0; k < std::max(level.n, 1); ++k) {
      for (int i = 0; i < (k == 0 ? 1 : 3); ++i) {
        HoleRegion h = hole_region(SymbolWord::repeat(i, k), 2);
        if (hole_is_empty(h, level.lambda)) continue;
        os << "<path d=\"" << path_of(frame, hole_vertices(h, level.lambda)) << "\"/>\n";
      }
    }
    os << "</g>\n";
  }
  os << "</svg>\n";
  return os.str();
}

void render_svg(const LevelSet& level, const std::string& path, const RenderOptions& options) {
  std::string svg = render_svg_string(level, options);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out << svg;
  if (!out) throw IoError("failed writing " + path);
}

}  // namespace gasket
