#include "uls/config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>

#include "uls/errors.hpp"

namespace uls {

using json = nlohmann::json;

namespace {

[[noreturn]] void bad(const std::string& what) {
  throw Error(ErrorCode::InvalidArgument, what);
}

AmplitudeLaw law_from_json(const json& r) {
  AmplitudeLaw law;
  const std::string kind = r.value("law", std::string("flat"));
  if (kind == "flat") {
    law.kind = AmplitudeLaw::Kind::Flat;
  } else if (kind == "power") {
    law.kind = AmplitudeLaw::Kind::Power;
    law.exponent = r.value("exponent", 1.0);
  } else {
    bad("unknown amplitude law '" + kind + "'");
  }
  law.scale = r.value("scale", 1.0);
  return law;
}

std::string fmt(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char b[32];
  std::snprintf(b, sizeof b, "%.17g", v);
  return b;
}

}  // namespace

Field field_from_json(const json& j, std::uint64_t seed) {
  try {
    const std::string kind = j.value("kind", std::string("trig"));
    if (kind == "trig") return tp_from_json(j);
    if (kind != "grid") bad("unknown data kind '" + kind + "'");
    if (j.contains("path")) return gf_read_binary(j.at("path").get<std::string>());
    const double L = j.at("L").get<double>();
    const auto n = j.at("n").get<std::size_t>();
    if (j.contains("from_trig")) return gf_from_trigpoly(tp_from_json(j.at("from_trig")), L, n).field;
    if (j.contains("random")) {
      const auto& r = j.at("random");
      const auto band = r.at("band").get<std::vector<double>>();
      if (band.size() != 2) bad("random.band must be [lo, hi]");
      GridField g = gf_random_bandlimited(r.value("seed", seed), L, n, band[0], band[1], law_from_json(r));
      if (r.contains("wiener")) {
        const double w = g.wiener_norm();
        if (w > 0) g = gf_scale(g, r.at("wiener").get<double>() / w);
      }
      return g;
    }
    bad("grid data needs one of path, from_trig, random");
  } catch (const json::exception& e) {
    bad(std::string("bad data spec: ") + e.what());
  }
}

json norm_options_to_json(const NormOptions& o) {
  json j{{"mode", o.mode == SupMode::Lattice ? "lattice" : "translation"},
         {"window", o.window == WindowKind::Sharp ? "sharp" : "mollified"},
         {"scan_origin", o.scan_origin},
         {"scan_length", o.scan_length},
         {"max_centers", o.max_centers}};
  if (o.n_max) j["n_max"] = *o.n_max;
  return j;
}

NormOptions norm_options_from_json(const json& j) {
  NormOptions o;
  if (j.is_null()) return o;
  const std::string mode = j.value("mode", std::string("translation"));
  if (mode == "lattice") o.mode = SupMode::Lattice;
  else if (mode == "translation") o.mode = SupMode::Translation;
  else bad("unknown norm mode '" + mode + "'");
  const std::string win = j.value("window", std::string("sharp"));
  if (win == "sharp") o.window = WindowKind::Sharp;
  else if (win == "mollified") o.window = WindowKind::Mollified;
  else bad("unknown window '" + win + "'");
  o.scan_origin = j.value("scan_origin", o.scan_origin);
  o.scan_length = j.value("scan_length", o.scan_length);
  o.max_centers = j.value("max_centers", o.max_centers);
  if (j.contains("n_max")) {
    const auto n = j.at("n_max").get<Dyadic>();
    if (!is_dyadic(n)) bad("norms.n_max must be dyadic");
    o.n_max = n;
  }
  if (o.max_centers < 2) bad("norms.max_centers must be >= 2");
  return o;
}

SolveConfig solve_config_from_json(const json& j) {
  SolveConfig c;
  if (j.is_null()) return c;
  c.T = j.value("T", c.T);
  c.n_time_nodes = j.value("n_time_nodes", c.n_time_nodes);
  c.picard_tol = j.value("picard_tol", c.picard_tol);
  c.picard_max_iters = j.value("picard_max_iters", c.picard_max_iters);
  c.prune_floor = j.value("prune_floor", c.prune_floor);
  c.max_halvings = j.value("max_halvings", c.max_halvings);
  c.dropped_mass_budget = j.value("dropped_mass_budget", c.dropped_mass_budget);
  if (j.contains("M_list")) c.M_list = j.at("M_list").get<std::vector<Dyadic>>();
  const std::string be = j.value("backend", std::string("trig"));
  if (be == "trig") c.backend = Backend::Trig;
  else if (be == "grid") c.backend = Backend::Grid;
  else bad("unknown backend '" + be + "'");
  if (!(c.T > 0)) bad("solve.T must be positive");
  if (c.n_time_nodes < 3 || c.n_time_nodes % 2 == 0) bad("solve.n_time_nodes must be odd and >= 3");
  for (auto M : c.M_list)
    if (!is_dyadic(M)) bad("solve.M_list entries must be dyadic");
  return c;
}

RunConfig parse_config(const json& j) {
  if (!j.is_object()) bad("config must be a JSON object");
  const std::string schema = j.value("schema", std::string());
  if (schema != kConfigSchema) bad("config schema must be \"v1\", got \"" + schema + "\"");
  RunConfig c;
  c.raw = j;
  try {
    c.seed = j.value("seed", std::uint64_t{0});
    if (!j.contains("equation")) bad("config lacks 'equation'");
    if (!j.contains("data")) bad("config lacks 'data'");
    c.eq = equation_from_json(j.at("equation"));
    c.data = j.at("data");
    const json solve = j.value("solve", json());
    c.solve = solve_config_from_json(solve);
    if (solve.is_object() && solve.contains("M") && !solve.at("M").is_null()) {
      const auto M = solve.at("M").get<Dyadic>();
      if (!is_dyadic(M)) bad("solve.M must be dyadic");
      c.M = M;
    }
    if (!c.M && !c.eq.nl.q_is_zero()) c.M = Dyadic{64};
    c.norms = norm_options_from_json(j.value("norms", json()));
    if (j.contains("sup")) {
      c.sup.window = j.at("sup").value("window", c.sup.window);
      c.sup.max_points = j.at("sup").value("max_points", c.sup.max_points);
      if (!(c.sup.window > 0) || c.sup.max_points < 16) bad("sup.window must be positive, max_points >= 16");
    }
    if (j.contains("envelope")) c.envelope_delta = j.at("envelope").value("delta", 0.1);
    if (j.contains("output")) {
      c.out_dir = j.at("output").value("dir", c.out_dir);
      c.prefix = j.at("output").value("prefix", c.prefix);
    }
  } catch (const json::exception& e) {
    bad(std::string("bad config: ") + e.what());
  }
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) bad("cannot open config '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    bad("config '" + path + "' is not valid JSON: " + e.what());
  }
  return parse_config(j);
}

std::string RunConfig::hash() const { return config_hash(raw); }

std::string config_hash(const json& j) {
  const std::string s = j.dump();
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char ch : s) { h ^= ch; h *= 1099511628211ull; }
  std::ostringstream o;
  o << std::hex << std::setw(16) << std::setfill('0') << h;
  return o.str();
}

CsvWriter::CsvWriter(const std::string& path, const std::string& hash, const std::string& tag,
                     const std::vector<std::string>& columns)
    : path_(path), ncol_(columns.size()) {
  buf_ = "# config_hash=" + hash + " " + tag + "\n";
  for (std::size_t i = 0; i < columns.size(); ++i) buf_ += (i ? "," : "") + columns[i];
  buf_ += "\n";
}

void CsvWriter::row(const std::vector<double>& values) {
  std::vector<std::string> s;
  for (double v : values) s.push_back(fmt(v));
  row(s);
}

void CsvWriter::row(const std::vector<std::string>& values) {
  if (values.size() != ncol_) bad("csv row width differs from header");
  for (std::size_t i = 0; i < values.size(); ++i) buf_ += (i ? "," : "") + values[i];
  buf_ += "\n";
}

void CsvWriter::close() {
  std::ofstream out(path_);
  if (!out) bad("cannot write '" + path_ + "'");
  out << buf_;
}

std::vector<double> CsvTable::column(const std::string& name) const {
  auto it = std::find(columns.begin(), columns.end(), name);
  if (it == columns.end()) bad("csv has no column '" + name + "'");
  const std::size_t k = static_cast<std::size_t>(it - columns.begin());
  std::vector<double> v;
  for (const auto& r : rows) v.push_back(r[k]);
  return v;
}

CsvTable read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) bad("cannot open csv '" + path + "'");
  CsvTable t;
  std::string line;
  auto split = [](const std::string& l) {
    std::vector<std::string> out;
    std::stringstream ss(l);
    std::string cell;
    while (std::getline(ss, cell, ',')) out.push_back(cell);
    return out;
  };
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') { t.comments.push_back(line); continue; }
    if (t.columns.empty()) { t.columns = split(line); continue; }
    const auto cells = split(line);
    if (cells.size() != t.columns.size()) bad("ragged csv row in '" + path + "'");
    std::vector<double> r;
    for (const auto& c : cells) {
      char* end = nullptr;
      const double v = std::strtod(c.c_str(), &end);
      r.push_back(end && *end == '\0' && !c.empty() ? v : std::numeric_limits<double>::quiet_NaN());
    }
    t.rows.push_back(std::move(r));
  }
  if (t.columns.empty()) bad("csv '" + path + "' has no header");
  return t;
}

namespace {

std::string esc(const std::string& s) {
  std::string o;
  for (char c : s) {
    if (c == '<') o += "&lt;";
    else if (c == '>') o += "&gt;";
    else if (c == '&') o += "&amp;";
    else o += c;
  }
  return o;
}

}  // namespace

std::string render_svg(const CsvTable& t, const PlotSpec& spec, const std::string& hash) {
  if (spec.y.empty()) bad("plot needs at least one y column");
  const auto xs_raw = t.column(spec.x);
  const double W = 640, H = 420, ml = 70, mr = 20, mt = 40, mb = 50;
  auto tx = [&](double v) { return spec.logx ? (v > 0 ? std::log10(v) : NAN) : v; };
  auto ty = [&](double v) { return spec.logy ? (v > 0 ? std::log10(std::abs(v)) : NAN) : v; };

  struct Series {
    std::string name;
    std::vector<std::pair<double, double>> pts;
  };
  std::vector<Series> series;
  double x0 = INFINITY, x1 = -INFINITY, y0 = INFINITY, y1 = -INFINITY;
  for (const auto& name : spec.y) {
    const auto ys = t.column(name);
    Series s{name, {}};
    for (std::size_t i = 0; i < ys.size(); ++i) {
      const double a = tx(xs_raw[i]), b = ty(ys[i]);
      if (!std::isfinite(a) || !std::isfinite(b)) continue;
      s.pts.push_back({a, b});
      x0 = std::min(x0, a); x1 = std::max(x1, a);
      y0 = std::min(y0, b); y1 = std::max(y1, b);
    }
    series.push_back(std::move(s));
  }
  if (!std::isfinite(x0)) { x0 = 0; x1 = 1; y0 = 0; y1 = 1; }
  if (x1 == x0) { x0 -= 0.5; x1 += 0.5; }
  if (y1 == y0) { y0 -= 0.5; y1 += 0.5; }
  auto px = [&](double a) { return ml + (a - x0) / (x1 - x0) * (W - ml - mr); };
  auto py = [&](double b) { return H - mb - (b - y0) / (y1 - y0) * (H - mt - mb); };

  static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};
  std::ostringstream o;
  o << std::setprecision(6);
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\">\n";
  o << "<!-- config_hash=" << hash << " -->\n";
  o << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  o << "<text x=\"" << ml << "\" y=\"24\" font-family=\"sans-serif\" font-size=\"14\">"
    << esc(spec.title.empty() ? spec.x + " vs " + spec.y.front() : spec.title) << "</text>\n";
  o << "<line x1=\"" << ml << "\" y1=\"" << H - mb << "\" x2=\"" << W - mr << "\" y2=\"" << H - mb
    << "\" stroke=\"black\"/>\n";
  o << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml << "\" y2=\"" << H - mb
    << "\" stroke=\"black\"/>\n";
  for (int k = 0; k <= 4; ++k) {
    const double a = x0 + (x1 - x0) * k / 4, b = y0 + (y1 - y0) * k / 4;
    o << "<text x=\"" << px(a) << "\" y=\"" << H - mb + 16
      << "\" font-family=\"sans-serif\" font-size=\"10\" text-anchor=\"middle\">"
      << (spec.logx ? "1e" : "") << a << "</text>\n";
    o << "<text x=\"" << ml - 6 << "\" y=\"" << py(b) + 3
      << "\" font-family=\"sans-serif\" font-size=\"10\" text-anchor=\"end\">" << (spec.logy ? "1e" : "")
      << b << "</text>\n";
  }
  o << "<text x=\"" << (W + ml) / 2 << "\" y=\"" << H - 12
    << "\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\">" << esc(spec.x)
    << (spec.logx ? " (log10)" : "") << "</text>\n";

  for (std::size_t si = 0; si < series.size(); ++si) {
    const auto& s = series[si];
    const char* col = colors[si % 6];
    if (!s.pts.empty()) {
      o << "<polyline fill=\"none\" stroke=\"" << col << "\" stroke-width=\"1.5\" points=\"";
      for (auto [a, b] : s.pts) o << px(a) << "," << py(b) << " ";
      o << "\"/>\n";
    }
    std::string label = s.name;
    if (spec.fit && s.pts.size() >= 2) {
      double mx = 0, my = 0;
      for (auto [a, b] : s.pts) { mx += a; my += b; }
      mx /= s.pts.size(); my /= s.pts.size();
      double sxx = 0, sxy = 0;
      for (auto [a, b] : s.pts) { sxx += (a - mx) * (a - mx); sxy += (a - mx) * (b - my); }
      const double slope = sxx > 0 ? sxy / sxx : 0.0;
      const double c = my - slope * mx;
      o << "<line x1=\"" << px(x0) << "\" y1=\"" << py(c + slope * x0) << "\" x2=\"" << px(x1)
        << "\" y2=\"" << py(c + slope * x1) << "\" stroke=\"" << col
        << "\" stroke-dasharray=\"4 3\"/>\n";
      std::ostringstream l;
      l << std::setprecision(4) << s.name << " (slope " << slope << ")";
      label = l.str();
    }
    o << "<text x=\"" << W - mr - 4 << "\" y=\"" << mt + 14 * (si + 1)
      << "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"end\" fill=\"" << col << "\">"
      << esc(label) << "</text>\n";
  }
  o << "</svg>\n";
  return o.str();
}

}  // namespace uls
