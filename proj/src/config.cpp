#include "minkhelix/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

namespace minkhelix {

const std::vector<std::string>& nonnull_checks() {
  static const std::vector<std::string> names{
      "eikonal",       "frame_residuals", "slant_helix",   "darboux_helix", "non_normed_darboux", "corollary_2_1",
      "theorem_2_1",   "corollary_2_2",   "theorem_2_2",   "theorem_2_3",   "corollary_2_3"};
  return names;
}

const std::vector<std::string>& null_checks() {
  static const std::vector<std::string> names{
      "eikonal",     "frame_residuals", "null_helix",  "null_v2_slant", "null_v3_slant", "null_darboux",
      "theorem_3_1", "theorem_3_2",     "theorem_3_3", "theorem_3_4",   "corollary_3_1", "theorem_3_5"};
  return names;
}

const std::vector<std::string>& known_checks() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> all = nonnull_checks();
    for (const auto& n : null_checks()) {
      if (std::find(all.begin(), all.end(), n) == all.end()) all.push_back(n);
    }
    return all;
  }();
  return names;
}

Interval AnalysisConfig::effective_domain() const {
  if (domain) return *domain;
  if (curve.domain) return *curve.domain;
  return {-1.0, 1.0};
}

CurveSpec AnalysisConfig::curve_spec() const {
  return CurveSpec::parse(curve.x, curve.y, curve.z, effective_domain(), samples, curve.params);
}

ScalarField AnalysisConfig::scalar_field() const {
  std::map<std::string, double> constants = curve.params;
  for (const auto& [k, v] : field.params) constants[k] = v;
  return ScalarField::parse(field.f, field.convention, constants);
}

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double parse_real(const std::string& text, int line, int column) {
  const std::string t = trim(text);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc() || ptr != t.data() + t.size() || t.empty()) {
    throw ParseError("expected a real number, got '" + t + "'", line, column);
  }
  return v;
}

Interval parse_interval(std::string text, int line, int column) {
  text = trim(text);
  if (!text.empty() && text.front() == '[') {
    if (text.back() != ']') throw ParseError("unterminated interval", line, column);
    text = text.substr(1, text.size() - 2);
  }
  const auto comma = text.find(',');
  if (comma == std::string::npos) throw ParseError("interval needs two comma-separated bounds", line, column);
  Interval iv{parse_real(text.substr(0, comma), line, column), parse_real(text.substr(comma + 1), line, column)};
  if (!(iv.lo < iv.hi)) throw ParseError("interval needs lo < hi", line, column);
  return iv;
}

bool parse_bool(const std::string& text, int line, int column) {
  const std::string t = trim(text);
  if (t == "true" || t == "yes" || t == "1") return true;
  if (t == "false" || t == "no" || t == "0") return false;
  throw ParseError("expected true or false, got '" + t + "'", line, column);
}

std::string format_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

bool valid_identifier(const std::string& name) {
  if (name.empty() || !(std::isalpha(static_cast<unsigned char>(name[0])) || name[0] == '_')) return false;
  return std::all_of(name.begin(), name.end(),
                     [](char ch) { return std::isalnum(static_cast<unsigned char>(ch)) || ch == '_'; });
}

}  // namespace

AnalysisConfig parse_config(const std::string& text) {
  AnalysisConfig cfg;
  std::string section;
  std::set<std::string> seen;
  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string line = trim(raw);
    if (line.empty() || line[0] == '#' || line[0] == ';') continue;
    const int indent = static_cast<int>(raw.find_first_not_of(" \t")) + 1;

    if (line[0] == '[') {
      if (line.back() != ']') throw ParseError("section header must end with ']'", line_no, indent);
      section = trim(line.substr(1, line.size() - 2));
      if (section != "curve" && section != "field" && section != "analysis") {
        throw UnknownKey("line " + std::to_string(line_no) + ": unknown section [" + section + "]");
      }
      continue;
    }
    const auto eq = raw.find('=');
    if (eq == std::string::npos) throw ParseError("expected 'key = value'", line_no, indent);
    if (section.empty()) throw ParseError("key outside of any section", line_no, indent);
    const std::string key = trim(raw.substr(0, eq));
    const std::string value = trim(raw.substr(eq + 1));
    const auto vpos = raw.find_first_not_of(" \t", eq + 1);
    const int vcol = static_cast<int>(vpos == std::string::npos ? eq + 1 : vpos) + 1;
    if (key.empty()) throw ParseError("empty key", line_no, indent);
    if (!seen.insert(section + "." + key).second) {
      throw ParseError("duplicate key '" + key + "' in [" + section + "]", line_no, indent);
    }

    auto unknown = [&] {
      throw UnknownKey("line " + std::to_string(line_no) + ": unknown key '" + key + "' in [" + section + "]");
    };

    if (key.rfind("param.", 0) == 0) {
      const std::string name = key.substr(6);
      if (!valid_identifier(name)) throw ParseError("invalid parameter name '" + name + "'", line_no, indent);
      if (section == "curve") {
        cfg.curve.params[name] = parse_real(value, line_no, vcol);
      } else if (section == "field") {
        cfg.field.params[name] = parse_real(value, line_no, vcol);
      } else {
        unknown();
      }
      continue;
    }

    if (section == "curve") {
      if (key == "x") {
        cfg.curve.x = value;
      } else if (key == "y") {
        cfg.curve.y = value;
      } else if (key == "z") {
        cfg.curve.z = value;
      } else if (key == "domain") {
        cfg.curve.domain = parse_interval(value, line_no, vcol);
      } else {
        unknown();
      }
    } else if (section == "field") {
      if (key == "f") {
        cfg.field.f = value;
      } else if (key == "convention") {
        try {
          cfg.field.convention = parse_convention(value);
        } catch (const ConfigError& e) {
          throw ParseError(e.what(), line_no, vcol);
        }
      } else {
        unknown();
      }
    } else {
      if (key == "samples") {
        const double n = parse_real(value, line_no, vcol);
        if (n != std::floor(n) || n < 8 || n > 1e6) {
          throw ParseError("samples must be an integer between 8 and 1000000", line_no, vcol);
        }
        cfg.samples = static_cast<int>(n);
      } else if (key == "domain") {
        cfg.domain = parse_interval(value, line_no, vcol);
      } else if (key == "abs_tol" || key == "rel_tol") {
        const double v = parse_real(value, line_no, vcol);
        if (!(v > 0.0) || !std::isfinite(v)) throw ParseError(key + " must be positive", line_no, vcol);
        (key == "abs_tol" ? cfg.policy.abs_tol : cfg.policy.rel_tol) = v;
      } else if (key == "checks") {
        std::vector<std::string> names;
        std::istringstream list(value);
        std::string item;
        while (std::getline(list, item, ',')) {
          item = trim(item);
          if (item.empty()) continue;
          const auto& known = known_checks();
          if (std::find(known.begin(), known.end(), item) == known.end()) {
            throw UnknownKey("line " + std::to_string(line_no) + ": unknown check '" + item + "'");
          }
          names.push_back(item);
        }
        cfg.checks = names;
      } else if (key == "arc_length") {
        cfg.arc_length = parse_bool(value, line_no, vcol);
      } else {
        unknown();
      }
    }
  }

  if (cfg.curve.x.empty() || cfg.curve.y.empty() || cfg.curve.z.empty()) {
    throw ConfigError("[curve] needs all of x, y and z");
  }
  if (cfg.field.f.empty()) throw ConfigError("[field] needs f");
  // Parse once so that bad expressions fail here rather than mid-run.
  cfg.curve_spec();
  cfg.scalar_field();
  return cfg;
}

AnalysisConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read config file '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str());
}

std::string serialize_config(const AnalysisConfig& c) {
  std::ostringstream out;
  auto interval = [](const Interval& iv) { return "[" + format_real(iv.lo) + ", " + format_real(iv.hi) + "]"; };
  out << "# coordinate 1 is timelike: g(a, b) = -a1 b1 + a2 b2 + a3 b3\n";
  out << "[curve]\n";
  out << "x = " << c.curve.x << "\n";
  out << "y = " << c.curve.y << "\n";
  out << "z = " << c.curve.z << "\n";
  if (c.curve.domain) out << "domain = " << interval(*c.curve.domain) << "\n";
  for (const auto& [k, v] : c.curve.params) out << "param." << k << " = " << format_real(v) << "\n";
  out << "\n[field]\n";
  out << "f = " << c.field.f << "\n";
  out << "convention = " << to_string(c.field.convention) << "\n";
  for (const auto& [k, v] : c.field.params) out << "param." << k << " = " << format_real(v) << "\n";
  out << "\n[analysis]\n";
  out << "samples = " << c.samples << "\n";
  if (c.domain) out << "domain = " << interval(*c.domain) << "\n";
  out << "abs_tol = " << format_real(c.policy.abs_tol) << "\n";
  out << "rel_tol = " << format_real(c.policy.rel_tol) << "\n";
  if (c.checks) {
    out << "checks =";
    for (std::size_t i = 0; i < c.checks->size(); ++i) out << (i ? ", " : " ") << (*c.checks)[i];
    out << "\n";
  }
  out << "arc_length = " << (c.arc_length ? "true" : "false") << "\n";
  return out.str();
}

}  // namespace minkhelix
