#include "cli.h"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <memory>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "gasket/attractor.h"
#include "gasket/error.h"
#include "gasket/numtheory.h"
#include "gasket/symbolic.h"

namespace gasket::cli {

namespace {

using json = nlohmann::ordered_json;

std::string fixed(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  return buf;
}

int parse_index(const std::string& text, const std::string& token) {
  try {
    std::size_t used = 0;
    int v = std::stoi(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw DomainError("malformed integer in token '" + token + "'");
  }
}

// "prefix:rest" -> rest, or nullopt when the prefix does not match.
std::optional<std::string> after(const std::string& token, const std::string& prefix) {
  if (token.rfind(prefix + ":", 0) != 0) return std::nullopt;
  return token.substr(prefix.size() + 1);
}

Parameter rational_token(const std::string& body, const std::string& token) {
  if (body.find('.') != std::string::npos) throw DomainError("rational: expects p/q, got '" + token + "'");
  return Parameter::rational(parse_rational(body));
}

Parameter decimal_token(const std::string& body, const std::string& token) {
  if (body.find('/') != std::string::npos) throw DomainError("real: expects a decimal, got '" + token + "'");
  return Parameter::rational(parse_rational(body));
}

std::string describe(const Parameter& p) {
  if (p.is_rational()) return "rational " + to_string(p.rational_value());
  const auto& a = p.algebraic_value();
  return "root of " + p.polynomial().to_string() + " in (" + to_string(a.lower()) + ", " + to_string(a.upper()) + ")";
}

void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw IoError("cannot open " + path + " for writing");
  file << text;
  if (!file) throw IoError("failed writing " + path);
}

std::string with_newline(std::string s) {
  if (s.empty() || s.back() != '\n') s += '\n';
  return s;
}

struct Common {
  std::string output;
  std::string format;
  std::string lambda = "omega:2";
  std::string theta = "golden";
  int depth = -1;
  int dim = 2;
  unsigned threads = 1;
  std::uint64_t max_words = 0;
  bool dry_run = false;

  Limits limits() const {
    Limits l = Limits::from_env();
    if (max_words > 0) l.max_words = max_words;
    l.threads = threads;
    return l;
  }
};

void add_caps(CLI::App* sub, Common& c) {
  sub->add_option("-o,--output", c.output, "Output file (default stdout)");
  sub->add_option("--threads", c.threads, "Worker threads")->check(CLI::Range(1u, 256u));
  sub->add_option("--max-words", c.max_words, "Enumeration cap (overrides GASKET_MAX_WORDS)")
      ->check(CLI::PositiveNumber);
  sub->add_flag("--dry-run", c.dry_run, "Print the resolved parameters and caps, then exit");
}

void add_format(CLI::App* sub, Common& c, const std::string& fallback, std::vector<std::string> allowed) {
  c.format = fallback;
  sub->add_option("--format", c.format, "Output format")->check(CLI::IsMember(std::move(allowed)));
}

void dry_run_report(std::ostream& out, const std::string& command, const Common& c,
                    const std::vector<std::pair<std::string, std::string>>& extra) {
  Limits l = c.limits();
  out << "command: " << command << "\n";
  for (const auto& [k, v] : extra) out << k << ": " << v << "\n";
  out << "max_words: " << l.max_words << "\n";
  out << "threads: " << l.threads << "\n";
  out << "output: " << (c.output.empty() ? "-" : c.output) << "\n";
}

std::vector<std::pair<std::string, std::string>> lambda_lines(const Parameter& p) {
  return {{"lambda", p.label()}, {"lambda_exact", describe(p)}, {"lambda_approx", fixed(p.value(), 17)}};
}

int depth_or(const Common& c, int fallback) { return c.depth >= 0 ? c.depth : fallback; }

}  // namespace

Parameter parse_lambda(const std::string& token) {
  if (token == "lambda-star") return lambda_star_parameter();
  if (auto body = after(token, "omega")) {
    int m = parse_index(*body, token);
    if (m < 2 || m > 64) throw DomainError("omega:<m> needs 2 <= m <= 64");
    return multinacci_parameter(m);
  }
  if (auto body = after(token, "rational")) return rational_token(*body, token);
  if (auto body = after(token, "real")) return decimal_token(*body, token);
  throw DomainError("unrecognized lambda token '" + token + "' (omega:<m>, rational:<p>/<q>, lambda-star, real:<x>)");
}

Parameter parse_theta(const std::string& token) {
  if (token == "golden") return Parameter::algebraic(inverse_multinacci(2), "golden");
  if (auto body = after(token, "inv-omega")) {
    int m = parse_index(*body, token);
    if (m < 2 || m > 64) throw DomainError("inv-omega:<m> needs 2 <= m <= 64");
    return Parameter::algebraic(inverse_multinacci(m), token);
  }
  if (auto body = after(token, "pisot")) {
    // the four Pisot numbers below 3/2
    static const std::vector<Polynomial> polys = {
        Polynomial{-1, -1, 0, 1},         // x^3 = x + 1
        Polynomial{-1, 0, 0, -1, 1},      // x^4 = x^3 + 1
        Polynomial{-1, 0, 1, -1, -1, 1},  // x^5 - x^4 - x^3 + x^2 = 1
        Polynomial{-1, 0, -1, 1},         // x^3 = x^2 + 1
    };
    int k = parse_index(*body, token);
    if (k < 1 || k > 4) throw DomainError("pisot:<k> needs 1 <= k <= 4");
    auto root = isolate_root(polys[static_cast<std::size_t>(k - 1)], Rational(1), Rational(3, 2), default_tolerance());
    return Parameter::algebraic(root, token);
  }
  if (auto body = after(token, "rational")) return rational_token(*body, token);
  if (auto body = after(token, "real")) return decimal_token(*body, token);
  throw DomainError("unrecognized theta token '" + token +
                    "' (golden, inv-omega:<m>, pisot:<1..4>, rational:<p>/<q>, real:<x>)");
}

std::string csv_row(const std::vector<std::string>& fields) {
  std::string row;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) row += ',';
    const std::string& f = fields[i];
    if (f.find_first_of(",\"\r\n") == std::string::npos) {
      row += f;
      continue;
    }
    row += '"';
    for (char ch : f) {
      if (ch == '"') row += '"';
      row += ch;
    }
    row += '"';
  }
  return row + "\r\n";
}

std::string table1_csv() {
  std::string s = csv_row({"m", "omega", "dimension"});
  for (int m = 2; m <= 9; ++m)
    s += csv_row({std::to_string(m), fixed(multinacci(m).to_double(), 5), fixed(gasket_dimension(m), 5)});
  s += csv_row({"inf", fixed(0.5, 5), fixed(std::log(3.0) / std::log(2.0), 5)});
  return s;
}

std::string table2_csv(int grid_decimals, int half_decimals) {
  std::vector<std::string> header{"d"};
  for (int m = 2; m <= 6; ++m) header.push_back("m=" + std::to_string(m));
  header.push_back("lambda=1/2");
  std::string s = csv_row(header);
  for (int d = 2; d <= 6; ++d) {
    std::vector<std::string> row{std::to_string(d)};
    for (int m = 2; m <= 6; ++m) row.push_back(fixed(gasket_dimension(m, d), grid_decimals));
    row.push_back(fixed(sierpinski_dimension(d, 0.5), half_decimals));
    s += csv_row(row);
  }
  return s;
}

namespace {

std::string table1_json() {
  json rows = json::array();
  for (int m = 2; m <= 9; ++m)
    rows.push_back({{"m", m}, {"omega", multinacci(m).to_double()}, {"dimension", gasket_dimension(m)}});
  json j;
  j["rows"] = std::move(rows);
  j["limit"] = {{"omega", 0.5}, {"dimension", std::log(3.0) / std::log(2.0)}};
  return j.dump(2);
}

std::string table2_json() {
  json rows = json::array();
  for (int d = 2; d <= 6; ++d) {
    json r;
    r["d"] = d;
    for (int m = 2; m <= 6; ++m) r["m=" + std::to_string(m)] = gasket_dimension(m, d);
    r["lambda=1/2"] = sierpinski_dimension(d, 0.5);
    rows.push_back(std::move(r));
  }
  return json{{"rows", std::move(rows)}}.dump(2);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Golden gaskets: exact hole analysis, dimensions, counting sequences, separation constants"};
  app.name("gasket");
  app.require_subcommand(1);
  app.set_version_flag("--version", "gasket 0.1.0");

  Common c;
  std::function<int()> action;

  auto* t1 = app.add_subcommand("table1", "Multinacci numbers and gasket dimensions, m = 2..9");
  add_caps(t1, c);
  add_format(t1, c, "csv", {"csv", "json"});
  t1->callback([&] {
    action = [&] {
      if (c.dry_run) return dry_run_report(out, "table1", c, {}), int(kOk);
      emit(c.format == "json" ? with_newline(table1_json()) : table1_csv(), c.output, out);
      return int(kOk);
    };
  });

  auto* t2 = app.add_subcommand("table2", "Dimensions of golden d-gaskets, d = 2..6, m = 2..6");
  add_caps(t2, c);
  add_format(t2, c, "csv", {"csv", "json"});
  int decimals = 2;
  t2->add_option("--decimals", decimals, "Decimals for the m columns")->check(CLI::Range(0, 15));
  t2->callback([&] {
    action = [&] {
      if (c.dry_run) return dry_run_report(out, "table2", c, {}), int(kOk);
      emit(c.format == "json" ? with_newline(table2_json()) : table2_csv(decimals, std::max(decimals + 1, 3)), c.output,
           out);
      return int(kOk);
    };
  });

  auto lambda_opts = [&](CLI::App* sub, int default_depth, const char* depth_help) {
    sub->add_option("--lambda", c.lambda, "omega:<m> | rational:<p>/<q> | lambda-star | real:<x>");
    sub->add_option("--depth", c.depth, std::string(depth_help) + " (default " + std::to_string(default_depth) + ")")
        ->check(CLI::NonNegativeNumber);
    sub->add_option("--dim", c.dim, "Simplex dimension d")->check(CLI::Range(1, 8));
    add_caps(sub, c);
  };

  auto* render = app.add_subcommand("render", "SVG of the level-n union of images");
  lambda_opts(render, 6, "Level n");
  int size = 800;
  bool radial = false, overlaps = false;
  render->add_option("--size", size, "Image size in pixels")->check(CLI::Range(16, 20000));
  render->add_flag("--radial-holes", radial, "Shade the radial holes");
  render->add_flag("--overlaps", overlaps, "Shade the overlaps of the first-level images");
  render->callback([&] {
    action = [&] {
      Parameter lambda = parse_lambda(c.lambda);
      int n = depth_or(c, 6);
      if (c.dry_run) {
        auto lines = lambda_lines(lambda);
        lines.push_back({"depth", std::to_string(n)});
        lines.push_back({"dim", std::to_string(c.dim)});
        return dry_run_report(out, "render", c, lines), int(kOk);
      }
      if (c.dim != 2) throw DomainError("render supports --dim 2 only");
      LevelSet level = build_level(lambda, c.dim, n, c.limits());
      RenderOptions opt;
      opt.size = size;
      opt.highlight_radial_holes = radial;
      opt.highlight_overlaps = overlaps;
      emit(render_svg_string(level, opt), c.output, out);
      return int(kOk);
    };
  });

  auto* holes = app.add_subcommand("holes", "Classify the candidate holes of level n");
  lambda_opts(holes, 3, "Level n");
  holes->callback([&] {
    action = [&] {
      Parameter lambda = parse_lambda(c.lambda);
      int n = depth_or(c, 3);
      if (c.dry_run) {
        auto lines = lambda_lines(lambda);
        lines.push_back({"depth", std::to_string(n)});
        lines.push_back({"dim", std::to_string(c.dim)});
        return dry_run_report(out, "holes", c, lines), int(kOk);
      }
      HoleReport rep = classify_holes(lambda, c.dim, n, c.limits());
      emit(with_newline(rep.to_json()), c.output, out);
      return rep.violation_count() == 0 ? int(kOk) : int(kNegative);
    };
  });

  auto* selfsim = app.add_subcommand("selfsim", "Check total self-similarity up to level n");
  lambda_opts(selfsim, 7, "Highest level n");
  bool all_levels = false;
  selfsim->add_flag("--all-levels", all_levels, "Keep going past the first violating level");
  selfsim->callback([&] {
    action = [&] {
      Parameter lambda = parse_lambda(c.lambda);
      int n = depth_or(c, 7);
      if (c.dry_run) {
        auto lines = lambda_lines(lambda);
        lines.push_back({"depth", std::to_string(n)});
        lines.push_back({"dim", std::to_string(c.dim)});
        return dry_run_report(out, "selfsim", c, lines), int(kOk);
      }
      SelfSimilarityVerdict v = check_total_self_similarity(lambda, c.dim, n, c.limits(), all_levels);
      emit(with_newline(v.to_json()), c.output, out);
      return v.consistent ? int(kOk) : int(kNegative);
    };
  });

  auto* area = app.add_subcommand("area", "Bracket the area of the level-n union on a triangular grid");
  lambda_opts(area, 10, "Level n");
  add_format(area, c, "csv", {"csv", "json"});
  int resolution = 1024;
  area->add_option("--resolution", resolution, "Grid cells per edge")->check(CLI::Range(64, 16384));
  area->callback([&] {
    action = [&] {
      Parameter lambda = parse_lambda(c.lambda);
      int n = depth_or(c, 10);
      if (c.dry_run) {
        auto lines = lambda_lines(lambda);
        lines.push_back({"depth", std::to_string(n)});
        lines.push_back({"resolution", std::to_string(resolution)});
        return dry_run_report(out, "area", c, lines), int(kOk);
      }
      if (c.dim != 2) throw DomainError("area supports --dim 2 only");
      AreaBracket a = estimate_area(lambda, c.dim, n, resolution, c.limits());
      if (c.format == "json") {
        json j{{"lambda", lambda.label()}, {"n", n}, {"resolution", resolution}, {"lo", a.lo}, {"hi", a.hi}};
        emit(with_newline(j.dump(2)), c.output, out);
      } else {
        emit(csv_row({"lambda", "n", "resolution", "lo", "hi"}) +
                 csv_row({lambda.label(), std::to_string(n), std::to_string(resolution), fixed(a.lo, 6), fixed(a.hi, 6)}),
             c.output, out);
      }
      return int(kOk);
    };
  });

  auto* box = app.add_subcommand("box", "Box-counting slope of the level-n union");
  lambda_opts(box, 10, "Level n");
  add_format(box, c, "csv", {"csv", "json"});
  int k_lo = 3, k_hi = 8;
  box->add_option("--k-lo", k_lo, "Smallest exponent k, resolution round(lambda^-k)")->check(CLI::Range(1, 30));
  box->add_option("--k-hi", k_hi, "Largest exponent k")->check(CLI::Range(1, 30));
  box->callback([&] {
    action = [&] {
      Parameter lambda = parse_lambda(c.lambda);
      int n = depth_or(c, 10);
      if (c.dry_run) {
        auto lines = lambda_lines(lambda);
        lines.push_back({"depth", std::to_string(n)});
        lines.push_back({"k_range", std::to_string(k_lo) + ".." + std::to_string(k_hi)});
        return dry_run_report(out, "box", c, lines), int(kOk);
      }
      if (c.dim != 2) throw DomainError("box supports --dim 2 only");
      BoxDimension b = box_dimension_estimate(lambda, c.dim, n, k_lo, k_hi, c.limits());
      if (c.format == "json") {
        json samples = json::array();
        for (const auto& s : b.samples) samples.push_back({{"resolution", s.resolution}, {"occupied", s.occupied}});
        json j{{"lambda", lambda.label()}, {"n", n}, {"slope", b.slope}, {"samples", std::move(samples)}};
        emit(with_newline(j.dump(2)), c.output, out);
      } else {
        std::string s = csv_row({"resolution", "occupied"});
        for (const auto& x : b.samples) s += csv_row({std::to_string(x.resolution), std::to_string(x.occupied)});
        s += csv_row({"slope", fixed(b.slope, 6)});
        emit(s, c.output, out);
      }
      return int(kOk);
    };
  });

  auto* ell = app.add_subcommand("ell", "Degree-bounded minimum of |sum s_k theta^k|, s_k in {-1, 0, 1}");
  ell->add_option("--theta", c.theta, "golden | inv-omega:<m> | pisot:<1..4> | rational:<p>/<q> | real:<x>");
  int degree = 12;
  ell->add_option("--degree", degree, "Largest degree n_max")->check(CLI::Range(1, 62));
  add_caps(ell, c);
  ell->callback([&] {
    action = [&] {
      Parameter theta = parse_theta(c.theta);
      if (c.dry_run) {
        std::vector<std::pair<std::string, std::string>> lines{
            {"theta", theta.label()}, {"theta_exact", describe(theta)}, {"theta_approx", fixed(theta.value(), 17)},
            {"degree", std::to_string(degree)}};
        return dry_run_report(out, "ell", c, lines), int(kOk);
      }
      LinearCombination x = LinearCombination::monomial(1, 1);
      bool in_range = theta.sign_minus_rational(x, Rational(3, 2)) > 0 && theta.sign_minus_rational(x, Rational(2)) < 0;
      EllResult r = ell_upper(theta, degree);
      json j;
      j["theta"] = theta.label();
      j["n_max"] = degree;
      j["min_abs"] = r.bound;
      j["witness_coeffs"] = r.witness.coeffs;
      j["bound_2_over_2_plus_theta"] = 2.0 / (2.0 + theta.value());
      auto multi = inverse_multinacci_index(theta);
      bool certified = false;
      if (in_range && !multi) {
        LinearCombination w = r.witness.value.scaled(theta.sign(r.witness.value));
        certified = theta.sign(w * (LinearCombination::constant(2) + x) - LinearCombination::constant(2)) < 0;
      }
      j["certified"] = certified;
      j["bound_applicable"] = in_range && !multi;
      j["multinacci"] = multi ? json(*multi) : json(nullptr);
      j["witness_verified"] = theta.sign(r.witness.value) != 0;
      j["nodes"] = r.nodes;
      emit(with_newline(j.dump(2)), c.output, out);
      return int(kOk);
    };
  });

  auto* witness = app.add_subcommand("witness", "Search a digit word proving a hole is not genuine");
  lambda_opts(witness, 10, "Largest n");
  witness->callback([&] {
    action = [&] {
      Parameter lambda = parse_lambda(c.lambda);
      int n = depth_or(c, 10);
      if (c.dry_run) {
        auto lines = lambda_lines(lambda);
        lines.push_back({"depth", std::to_string(n)});
        return dry_run_report(out, "witness", c, lines), int(kOk);
      }
      ConverseWitness w = converse_witness(lambda, n);
      emit(with_newline(w.to_json()), c.output, out);
      return w.found ? int(kOk) : int(kNegative);
    };
  });

  auto* uniq = app.add_subcommand("uniq", "Count words avoiding every factor i j^m, lengths 1..n");
  int uniq_m = 2;
  uniq->add_option("--m", uniq_m, "Relation length m")->check(CLI::Range(2, 64));
  uniq->add_option("--depth", c.depth, "Largest length n (default 15)")->check(CLI::Range(1, 100000));
  add_caps(uniq, c);
  add_format(uniq, c, "csv", {"csv", "json"});
  uniq->callback([&] {
    action = [&] {
      int n = depth_or(c, 15);
      if (c.dry_run)
        return dry_run_report(out, "uniq", c, {{"m", std::to_string(uniq_m)}, {"depth", std::to_string(n)}}), int(kOk);
      std::vector<BigInt> counts;
      for (int k = 1; k <= n; ++k) counts.push_back(count_unique_addresses(uniq_m, k));
      auto ratio = [&](std::size_t k) {
        return k == 0 ? std::string() : fixed(Rational(counts[k], counts[k - 1]).get_d(), 9);
      };
      if (c.format == "json") {
        json rows = json::array();
        for (std::size_t k = 0; k < counts.size(); ++k) {
          json r{{"n", k + 1}, {"count", counts[k].get_str()}};
          r["ratio"] = k == 0 ? json(nullptr) : json(Rational(counts[k], counts[k - 1]).get_d());
          rows.push_back(std::move(r));
        }
        json j{{"m", uniq_m}, {"rows", std::move(rows)}};
        emit(with_newline(j.dump(2)), c.output, out);
      } else {
        std::string s = csv_row({"n", "count", "ratio"});
        for (std::size_t k = 0; k < counts.size(); ++k) s += csv_row({std::to_string(k + 1), counts[k].get_str(), ratio(k)});
        emit(s, c.output, out);
      }
      return int(kOk);
    };
  });

  auto* seq = app.add_subcommand("seq", "Counting sequences u, h, p");
  std::string kind = "u";
  int seq_m = 3;
  bool check_gf = false;
  seq->add_option("--kind", kind, "u | h | p")->check(CLI::IsMember({"u", "h", "p"}));
  seq->add_option("--m", seq_m, "Multinacci index m (h and p)")->check(CLI::Range(2, 64));
  seq->add_option("--depth", c.depth, "Last index (default 20)")->check(CLI::Range(0, 100000));
  seq->add_flag("--check", check_gf, "Also compare h and p with their generating functions (m >= 3)");
  add_caps(seq, c);
  add_format(seq, c, "csv", {"csv", "json"});
  seq->callback([&] {
    action = [&] {
      int n = depth_or(c, 20);
      if (c.dry_run)
        return dry_run_report(out, "seq", c,
                              {{"kind", kind}, {"m", std::to_string(seq_m)}, {"depth", std::to_string(n)}}),
               int(kOk);
      CountingSeq s = kind == "u" ? u_sequence(n) : kind == "h" ? h_sequence(seq_m, n) : p_sequence(seq_m, n);
      bool ok = s.recurrence_holds();
      if (check_gf && kind != "u") ok = ok && gf_series_check(seq_m, n);
      if (c.format == "json") {
        json values = json::array();
        for (const auto& v : s.values) values.push_back(v.get_str());
        json j{{"kind", s.name()}, {"m", kind == "u" ? 2 : seq_m}, {"values", std::move(values)},
               {"consistent", ok}};
        emit(with_newline(j.dump(2)), c.output, out);
      } else {
        emit(s.to_csv(), c.output, out);
      }
      return ok ? int(kOk) : int(kNegative);
    };
  });

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? int(kOk) : int(kError);
  }

  try {
    return action ? action() : int(kError);
  } catch (const ResourceLimit& e) {
    err << "gasket: resource limit: " << e.what() << "\n";
  } catch (const Error& e) {
    err << "gasket: " << e.what() << "\n";
  } catch (const std::exception& e) {
    err << "gasket: internal error: " << e.what() << "\n";
  }
  return kError;
}

}  // namespace gasket::cli
