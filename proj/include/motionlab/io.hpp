#pragma once

// File formats: cloud CSV, scale-count CSV, estimate blocks, SVG scatter
// plots and the JSON motion config.

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"
#include "motionlab/dimest.hpp"
#include "motionlab/error.hpp"
#include "motionlab/format.hpp"
#include "motionlab/harmonic.hpp"
#include "motionlab/ifs.hpp"
#include "motionlab/motion.hpp"
#include "motionlab/verify.hpp"

namespace motionlab {

// ---------------------------------------------------------------------------
// Text helpers

inline std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::IoError, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorKind::IoError, "cannot write " + path);
  out << text;
  if (!out) fail(ErrorKind::IoError, "write failed for " + path);
}

namespace detail {

inline std::string trim(std::string s) {
  const auto issp = [](unsigned char c) { return std::isspace(c) != 0; };
  s.erase(s.begin(), std::find_if_not(s.begin(), s.end(), issp));
  s.erase(std::find_if_not(s.rbegin(), s.rend(), issp).base(), s.end());
  return s;
}

inline std::optional<double> parse_double(const std::string& s) {
  const std::string t = trim(s);
  if (t.empty()) return std::nullopt;
  char* end = nullptr;
  const double v = std::strtod(t.c_str(), &end);
  if (end != t.c_str() + t.size()) return std::nullopt;
  return v;
}

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) out.push_back(cur);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

/// `key=value` pairs from a `; `-separated comment header.
inline std::optional<std::string> header_field(const std::string& line, const std::string& key) {
  for (const auto& part : split(line.substr(1), ';')) {
    const std::string p = trim(part);
    if (p.rfind(key + "=", 0) == 0) return p.substr(key.size() + 1);
  }
  return std::nullopt;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Point clouds: `# motionlab cloud v1; seed=..; method=..; size=..; source=..` then `x,y` rows

inline std::string cloud_to_csv(const PointCloud& cloud) {
  std::string out = "# motionlab cloud v1; seed=" + std::to_string(cloud.meta.seed) + "; method=" + cloud.meta.method +
                    "; size=" + std::to_string(cloud.meta.size_param) + "; source=" + cloud.meta.source + "\n";
  out.reserve(out.size() + cloud.points.size() * 48);
  for (const auto& p : cloud.points) {
    out += fmt17(p.real());
    out += ',';
    out += fmt17(p.imag());
    out += '\n';
  }
  return out;
}

inline PointCloud cloud_from_csv(const std::string& text) {
  PointCloud cloud;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    line = detail::trim(line);
    if (line.empty()) continue;
    if (line[0] == '#') {
      if (line.find("motionlab cloud") != std::string::npos) {
        if (auto v = detail::header_field(line, "seed")) cloud.meta.seed = std::stoull(*v);
        if (auto v = detail::header_field(line, "method")) cloud.meta.method = *v;
        if (auto v = detail::header_field(line, "size")) cloud.meta.size_param = std::stoull(*v);
        if (auto v = detail::header_field(line, "source")) cloud.meta.source = *v;
      }
      continue;
    }
    const auto cols = detail::split(line, ',');
    if (cols.size() != 2) fail(ErrorKind::IoError, "cloud line " + std::to_string(lineno) + ": expected x,y");
    const auto x = detail::parse_double(cols[0]);
    const auto y = detail::parse_double(cols[1]);
    if (!x || !y) {
      if (cloud.points.empty() && detail::trim(cols[0]) == "x") continue;  // optional column header
      fail(ErrorKind::IoError, "cloud line " + std::to_string(lineno) + ": not numeric");
    }
    cloud.points.emplace_back(*x, *y);
  }
  return cloud;
}

inline void write_cloud(const std::string& path, const PointCloud& cloud) { write_text(path, cloud_to_csv(cloud)); }
inline PointCloud read_cloud(const std::string& path) { return cloud_from_csv(read_text(path)); }

// ---------------------------------------------------------------------------
// Scale counts: `k,count` or `delta,count`

inline std::string counts_to_csv(const ScaleCounts& counts) {
  std::string out = "# cloud_size=" + std::to_string(counts.cloud_size) +
                    "; distinct=" + std::to_string(counts.distinct_points) + "\n";
  const bool dyadic = counts.kind == ScaleKind::Dyadic;
  out += dyadic ? "k,count\n" : "delta,count\n";
  for (const auto& e : counts.entries) {
    out += (dyadic ? std::to_string(static_cast<int>(e.scale)) : fmt17(e.scale)) + "," + std::to_string(e.count) + "\n";
  }
  return out;
}

inline ScaleCounts counts_from_csv(const std::string& text) {
  ScaleCounts counts;
  std::istringstream in(text);
  std::string line;
  bool have_header = false;
  while (std::getline(in, line)) {
    line = detail::trim(line);
    if (line.empty()) continue;
    if (line[0] == '#') {
      if (auto v = detail::header_field(line, "cloud_size")) counts.cloud_size = std::stoull(*v);
      if (auto v = detail::header_field(line, "distinct")) counts.distinct_points = std::stoull(*v);
      continue;
    }
    if (!have_header) {
      if (line == "k,count") counts.kind = ScaleKind::Dyadic;
      else if (line == "delta,count") counts.kind = ScaleKind::Packing;
      else fail(ErrorKind::IoError, "scale-count CSV needs a `k,count` or `delta,count` header");
      have_header = true;
      continue;
    }
    const auto cols = detail::split(line, ',');
    const auto s = cols.size() == 2 ? detail::parse_double(cols[0]) : std::nullopt;
    const auto c = cols.size() == 2 ? detail::parse_double(cols[1]) : std::nullopt;
    if (!s || !c || *c < 0) fail(ErrorKind::IoError, "bad scale-count row: " + line);
    counts.entries.push_back({*s, static_cast<std::size_t>(*c)});
  }
  return counts;
}

// ---------------------------------------------------------------------------
// Generic tables: sweep CSVs, report CSVs, bound sweeps

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::size_t column(const std::string& name) const {
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (header[i] == name) return i;
    }
    fail(ErrorKind::IoError, "no column \"" + name + "\"");
  }

  std::vector<double> numbers(const std::string& name) const {
    const std::size_t c = column(name);
    std::vector<double> out;
    out.reserve(rows.size());
    for (const auto& r : rows) {
      const auto v = detail::parse_double(r.at(c));
      if (!v) fail(ErrorKind::IoError, "column \"" + name + "\" has a non-numeric entry \"" + r.at(c) + "\"");
      out.push_back(*v);
    }
    return out;
  }
};

/// Header row then data rows; `#` comment lines and blank lines are skipped.
/// Every row must have as many fields as the header.
inline CsvTable csv_table_from_string(const std::string& text) {
  CsvTable table;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (detail::trim(line).empty() || line[0] == '#') continue;
    auto cols = detail::split(line, ',');
    if (table.header.empty()) {
      table.header = std::move(cols);
      continue;
    }
    if (cols.size() != table.header.size()) {
      fail(ErrorKind::IoError, "row has " + std::to_string(cols.size()) + " fields, header has " +
                                   std::to_string(table.header.size()));
    }
    table.rows.push_back(std::move(cols));
  }
  if (table.header.empty()) fail(ErrorKind::IoError, "CSV has no header row");
  return table;
}

/// Inverse of CheckReport::csv().
inline CheckReport report_from_csv(const std::string& text) {
  const CsvTable t = csv_table_from_string(text);
  if (t.header != std::vector<std::string>{"check", "param", "residual", "tolerance", "passed"}) {
    fail(ErrorKind::IoError, "not a check report CSV");
  }
  if (t.rows.empty()) fail(ErrorKind::IoError, "check report CSV has no rows");
  const auto residuals = t.numbers("residual");
  const auto tolerances = t.numbers("tolerance");
  CheckReport report(t.rows.front()[0], tolerances.front());
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    report.add(t.rows[i][1], residuals[i]);
    if ((t.rows[i][4] == "true") != report.rows.back().passed) {
      fail(ErrorKind::IoError, "passed flag disagrees with residual in row " + std::to_string(i + 1));
    }
  }
  return report;
}

/// Reads a `re,im,dim_theory[,dim_est[,dim_pack]]` sweep back into samples.
inline std::vector<EstimatorSample> sweep_from_csv(const std::string& text) {
  const CsvTable t = csv_table_from_string(text);
  const auto re = t.numbers("re");
  const auto im = t.numbers("im");
  const auto theory = t.numbers("dim_theory");
  const bool has_est = std::find(t.header.begin(), t.header.end(), "dim_est") != t.header.end();
  const bool has_pack = std::find(t.header.begin(), t.header.end(), "dim_pack") != t.header.end();
  const auto est = has_est ? t.numbers("dim_est") : std::vector<double>(re.size(), 0.0);
  const auto pack = has_pack ? t.numbers("dim_pack") : std::vector<double>{};
  std::vector<EstimatorSample> out(re.size());
  for (std::size_t i = 0; i < re.size(); ++i) {
    out[i].lambda = {re[i], im[i]};
    out[i].theory = theory[i];
    out[i].box.value = est[i];
    if (has_pack) {
      out[i].packing = DimensionEstimate{};
      out[i].packing->value = pack[i];
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Estimates

inline std::string estimate_block(const DimensionEstimate& e, const std::string& prefix = "") {
  std::ostringstream os;
  os << prefix << "value=" << fmt17(e.value) << "\n"
     << prefix << "window_lo=" << fmt17(e.x_lo) << "\n"
     << prefix << "window_hi=" << fmt17(e.x_hi) << "\n"
     << prefix << "scales=" << e.scales_used << "\n"
     << prefix << "slope_stderr=" << fmt17(e.slope_stderr) << "\n"
     << prefix << "r_squared=" << fmt17(e.r_squared) << "\n"
     << prefix << "lower_diagnostic=" << fmt17(e.lower_diagnostic) << "\n";
  return os.str();
}

inline constexpr const char* kEstimateCsvHeader = "value,window_lo,window_hi,scales,slope_stderr,r_squared,lower_diagnostic";

inline std::string estimate_csv_row(const DimensionEstimate& e) {
  return fmt17(e.value) + "," + fmt17(e.x_lo) + "," + fmt17(e.x_hi) + "," + std::to_string(e.scales_used) + "," +
         fmt17(e.slope_stderr) + "," + fmt17(e.r_squared) + "," + fmt17(e.lower_diagnostic);
}

// ---------------------------------------------------------------------------
// SVG scatter plot

inline std::string cloud_to_svg(const PointCloud& cloud, int size = 800) {
  if (size < 16) fail(ErrorKind::InvalidArgument, "svg size must be at least 16");
  double x0 = 0, x1 = 1, y0 = 0, y1 = 1;
  if (!cloud.points.empty()) {
    x0 = x1 = cloud.points.front().real();
    y0 = y1 = cloud.points.front().imag();
    for (const auto& p : cloud.points) {
      x0 = std::min(x0, p.real());
      x1 = std::max(x1, p.real());
      y0 = std::min(y0, p.imag());
      y1 = std::max(y1, p.imag());
    }
  }
  double span = std::max(x1 - x0, y1 - y0);
  if (!(span > 0.0)) span = 1.0;
  const double margin = 0.05 * size;
  const double scale = (size - 2.0 * margin) / span;
  const double cx = 0.5 * (x0 + x1), cy = 0.5 * (y0 + y1);

  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" + std::to_string(size) + "\" height=\"" +
         std::to_string(size) + "\" viewBox=\"0 0 " + std::to_string(size) + " " + std::to_string(size) + "\">\n";
  out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n<g fill=\"black\">\n";
  char buf[96];
  for (const auto& p : cloud.points) {
    const double sx = 0.5 * size + (p.real() - cx) * scale;
    const double sy = 0.5 * size - (p.imag() - cy) * scale;
    std::snprintf(buf, sizeof buf, "<circle cx=\"%.3f\" cy=\"%.3f\" r=\"0.75\"/>\n", sx, sy);
    out += buf;
  }
  out += "</g>\n</svg>\n";
  return out;
}

// ---------------------------------------------------------------------------
// Motion config (JSON, "v": 1)

using json = nlohmann::json;

inline HarmonicFn harmonic_from_json(const json& j) {
  if (!j.is_object() || !j.contains("type")) fail(ErrorKind::ConfigError, "harmonic spec needs a \"type\"");
  const auto num = [&](const json& obj, const char* key, double dflt) -> double {
    if (!obj.contains(key)) return dflt;
    if (!obj.at(key).is_number()) fail(ErrorKind::ConfigError, std::string("\"") + key + "\" must be a number");
    return obj.at(key).get<double>();
  };
  const auto list = [&](const char* key) {
    std::vector<double> v;
    if (!j.contains(key)) return v;
    if (!j.at(key).is_array()) fail(ErrorKind::ConfigError, std::string("\"") + key + "\" must be an array");
    for (const auto& x : j.at(key)) {
      if (!x.is_number()) fail(ErrorKind::ConfigError, std::string("\"") + key + "\" entries must be numbers");
      v.push_back(x.get<double>());
    }
    return v;
  };
  const std::string type = j.at("type").get<std::string>();
  if (type == "affine") return HarmonicFn::affine(num(j, "alpha", 0.0), num(j, "beta", 0.0), num(j, "gamma", 0.0));
  if (type == "trigpoly") return HarmonicFn::trigpoly(num(j, "c0", 0.0), list("cos"), list("sin"));
  if (type == "scaled") {
    if (!j.contains("inner")) fail(ErrorKind::ConfigError, "scaled harmonic needs \"inner\"");
    return HarmonicFn::scaled(num(j, "weight", 1.0), harmonic_from_json(j.at("inner")));
  }
  if (type == "sum") {
    std::vector<HarmonicFn> terms;
    if (!j.contains("terms") || !j.at("terms").is_array()) fail(ErrorKind::ConfigError, "sum harmonic needs \"terms\"");
    for (const auto& t : j.at("terms")) terms.push_back(harmonic_from_json(t));
    return HarmonicFn::sum(std::move(terms));
  }
  fail(ErrorKind::ConfigError, "unknown harmonic type \"" + type + "\"");
}

inline json harmonic_to_json(const HarmonicFn& f) {
  return std::visit(
      [](const auto& g) -> json {
        using T = std::decay_t<decltype(g)>;
        if constexpr (std::is_same_v<T, HarmonicFn::Affine>) {
          return {{"type", "affine"}, {"alpha", g.alpha}, {"beta", g.beta}, {"gamma", g.gamma}};
        } else if constexpr (std::is_same_v<T, HarmonicFn::TrigPoly>) {
          return {{"type", "trigpoly"}, {"c0", g.c0}, {"cos", g.cos_coeffs}, {"sin", g.sin_coeffs}};
        } else if constexpr (std::is_same_v<T, HarmonicFn::Scaled>) {
          return {{"type", "scaled"}, {"weight", g.weight}, {"inner", harmonic_to_json(*g.inner)}};
        } else {
          json terms = json::array();
          for (const auto& t : g.terms) terms.push_back(harmonic_to_json(t));
          return {{"type", "sum"}, {"terms", terms}};
        }
      },
      f.form());
}

struct MotionConfig {
  enum class Kind { Astala, Composite };
  Kind kind = Kind::Astala;
  std::vector<int> ns;                // [n] or component_ns
  std::vector<HarmonicFn> harmonics;  // [h] or target members u_j
  std::vector<std::optional<std::vector<Point>>> centers;  // empty or one entry per component
};

namespace detail {

inline std::vector<Point> centers_from_json(const json& j) {
  if (!j.is_array()) fail(ErrorKind::ConfigError, "\"centers\" must be an array of [x, y]");
  std::vector<Point> out;
  for (const auto& c : j) {
    if (!c.is_array() || c.size() != 2 || !c[0].is_number() || !c[1].is_number()) {
      fail(ErrorKind::ConfigError, "center entries must be [x, y]");
    }
    out.emplace_back(c[0].get<double>(), c[1].get<double>());
  }
  return out;
}

inline json centers_to_json(const std::vector<Point>& cs) {
  json arr = json::array();
  for (const auto& c : cs) arr.push_back({c.real(), c.imag()});
  return arr;
}

inline int int_field(const json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_number_integer()) {
    fail(ErrorKind::ConfigError, std::string("\"") + key + "\" must be an integer");
  }
  return j.at(key).get<int>();
}

}  // namespace detail

inline MotionConfig config_from_json(const json& j) {
  if (!j.is_object()) fail(ErrorKind::ConfigError, "config must be a JSON object");
  if (!j.contains("v") || j.at("v") != 1) fail(ErrorKind::ConfigError, "unsupported config version (need \"v\": 1)");
  if (!j.contains("kind") || !j.at("kind").is_string()) fail(ErrorKind::ConfigError, "config needs \"kind\"");
  MotionConfig cfg;
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "astala") {
    cfg.kind = MotionConfig::Kind::Astala;
    cfg.ns = {detail::int_field(j, "n")};
    if (!j.contains("harmonic")) fail(ErrorKind::ConfigError, "astala config needs \"harmonic\"");
    cfg.harmonics = {harmonic_from_json(j.at("harmonic"))};
    if (j.contains("centers")) cfg.centers = {detail::centers_from_json(j.at("centers"))};
  } else if (kind == "composite") {
    cfg.kind = MotionConfig::Kind::Composite;
    if (!j.contains("component_ns") || !j.at("component_ns").is_array()) {
      fail(ErrorKind::ConfigError, "composite config needs \"component_ns\"");
    }
    for (const auto& n : j.at("component_ns")) {
      if (!n.is_number_integer()) fail(ErrorKind::ConfigError, "component_ns entries must be integers");
      cfg.ns.push_back(n.get<int>());
    }
    if (!j.contains("target") || !j.at("target").is_array()) {
      fail(ErrorKind::ConfigError, "composite config needs a \"target\" array of harmonic specs");
    }
    for (const auto& h : j.at("target")) cfg.harmonics.push_back(harmonic_from_json(h));
    if (j.contains("centers")) {
      for (const auto& c : j.at("centers")) {
        if (c.is_null()) cfg.centers.emplace_back(std::nullopt);
        else cfg.centers.emplace_back(detail::centers_from_json(c));
      }
    }
  } else {
    fail(ErrorKind::ConfigError, "unknown motion kind \"" + kind + "\"");
  }
  return cfg;
}

inline MotionConfig config_from_string(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    fail(ErrorKind::ConfigError, std::string("invalid JSON: ") + e.what());
  }
  try {
    return config_from_json(j);
  } catch (const json::exception& e) {
    fail(ErrorKind::ConfigError, e.what());
  }
}

inline json config_to_json(const MotionConfig& cfg) {
  json j;
  j["v"] = 1;
  if (cfg.kind == MotionConfig::Kind::Astala) {
    j["kind"] = "astala";
    j["n"] = cfg.ns.at(0);
    j["harmonic"] = harmonic_to_json(cfg.harmonics.at(0));
    if (!cfg.centers.empty() && cfg.centers[0]) j["centers"] = detail::centers_to_json(*cfg.centers[0]);
  } else {
    j["kind"] = "composite";
    j["component_ns"] = cfg.ns;
    json target = json::array();
    for (const auto& h : cfg.harmonics) target.push_back(harmonic_to_json(h));
    j["target"] = target;
    if (!cfg.centers.empty()) {
      json cs = json::array();
      for (const auto& c : cfg.centers) cs.push_back(c ? detail::centers_to_json(*c) : json(nullptr));
      j["centers"] = cs;
    }
  }
  return j;
}

/// Canonical text form: sorted keys, two-space indent, trailing newline.
inline std::string config_to_string(const MotionConfig& cfg) { return config_to_json(cfg).dump(2) + "\n"; }

using AnyMotion = std::variant<AstalaMotion, CompositeMotion>;

inline AnyMotion build_motion(const MotionConfig& cfg) {
  if (cfg.kind == MotionConfig::Kind::Astala) {
    std::optional<std::vector<Point>> centers;
    if (!cfg.centers.empty()) centers = cfg.centers[0];
    return build_astala_motion(PositiveHarmonic::certify(cfg.harmonics.at(0)), cfg.ns.at(0), centers);
  }
  return build_prescribed_motion(InfHarmonicFn::of(cfg.harmonics), cfg.ns, cfg.centers);
}

/// The config with every component's centres written out.
inline MotionConfig materialize(const MotionConfig& cfg, const AnyMotion& motion) {
  MotionConfig out = cfg;
  out.centers.clear();
  if (const auto* m = std::get_if<AstalaMotion>(&motion)) {
    out.centers.emplace_back(m->centers);
  } else {
    for (const auto& c : std::get<CompositeMotion>(motion).components) out.centers.emplace_back(c.motion.centers);
  }
  return out;
}

inline MotionConfig read_config(const std::string& path) { return config_from_string(read_text(path)); }

}  // namespace motionlab
