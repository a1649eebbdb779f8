#include "minkhelix/report.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <set>

namespace minkhelix {

using nlohmann::json;

const VerdictRecord& RunReport::verdict(const std::string& check) const {
  for (const auto& v : verdicts) {
    if (v.check == check) return v;
  }
  throw std::out_of_range("report has no verdict for check '" + check + "'");
}

const TheoremReport& RunReport::theorem(const std::string& name) const {
  for (const auto& t : theorems) {
    if (t.name == name) return t;
  }
  throw std::out_of_range("report has no theorem '" + name + "'");
}

const Series& RunReport::find_series(const std::string& quantity) const {
  for (const auto& s : series) {
    if (s.quantity == quantity) return s;
  }
  throw std::out_of_range("report has no series '" + quantity + "'");
}

// ---------------------------------------------------------------------------
// JSON

void to_json(json& j, const ConstancyReport& r) {
  j = json{{"n_samples", r.n_samples},     {"center", r.center},         {"max_abs_dev", r.max_abs_dev},
           {"scale", r.scale},             {"is_constant", r.is_constant}, {"is_nonzero", r.is_nonzero}};
}

void from_json(const json& j, ConstancyReport& r) {
  j.at("n_samples").get_to(r.n_samples);
  j.at("center").get_to(r.center);
  j.at("max_abs_dev").get_to(r.max_abs_dev);
  j.at("scale").get_to(r.scale);
  j.at("is_constant").get_to(r.is_constant);
  j.at("is_nonzero").get_to(r.is_nonzero);
}

void to_json(json& j, const TheoremReport& r) {
  json hyps = json::array();
  for (const auto& h : r.hypotheses) hyps.push_back({{"name", h.name}, {"holds", h.holds}});
  json concl = json::array();
  for (const auto& c : r.conclusions) {
    json e{{"name", c.name}, {"residual", c.residual}, {"holds", c.holds}, {"detail", c.detail}};
    e["report"] = c.report ? json(*c.report) : json(nullptr);
    concl.push_back(std::move(e));
  }
  j = json{{"name", r.name}, {"hypotheses", hyps}, {"conclusions", concl}, {"vacuous", r.vacuous}};
}

void from_json(const json& j, TheoremReport& r) {
  j.at("name").get_to(r.name);
  j.at("vacuous").get_to(r.vacuous);
  r.hypotheses.clear();
  for (const auto& h : j.at("hypotheses")) r.hypotheses.push_back({h.at("name"), h.at("holds")});
  r.conclusions.clear();
  for (const auto& c : j.at("conclusions")) {
    ConclusionCheck cc;
    c.at("name").get_to(cc.name);
    c.at("residual").get_to(cc.residual);
    c.at("holds").get_to(cc.holds);
    c.at("detail").get_to(cc.detail);
    if (!c.at("report").is_null()) cc.report = c.at("report").get<ConstancyReport>();
    r.conclusions.push_back(std::move(cc));
  }
}

void to_json(json& j, const RunReport& r) {
  json verdicts = json::array();
  for (const auto& v : r.verdicts) {
    verdicts.push_back({{"check", v.check},
                        {"definition", v.definition},
                        {"report", v.report},
                        {"admissible", v.admissible},
                        {"holds", v.holds}});
  }
  json series = json::array();
  for (const auto& s : r.series) series.push_back({{"quantity", s.quantity}, {"s", s.s}, {"values", s.values}});
  j = json{{"tool_version", r.tool_version},
           {"config", r.config_text},
           {"convention", r.convention},
           {"causal_kind", r.causal_kind},
           {"arc_length", r.arc_length},
           {"n_samples", r.n_samples},
           {"eikonal", r.eikonal ? json(*r.eikonal) : json(nullptr)},
           {"frame_summary",
            {{"kappa", r.kappa}, {"tau", r.tau}, {"continuous", r.frames_continuous}}},
           {"verdicts", verdicts},
           {"theorems", r.theorems},
           {"residuals", r.residuals},
           {"skipped", r.skipped},
           {"series", series}};
}

void from_json(const json& j, RunReport& r) {
  j.at("tool_version").get_to(r.tool_version);
  j.at("config").get_to(r.config_text);
  j.at("convention").get_to(r.convention);
  j.at("causal_kind").get_to(r.causal_kind);
  j.at("arc_length").get_to(r.arc_length);
  j.at("n_samples").get_to(r.n_samples);
  r.eikonal.reset();
  if (!j.at("eikonal").is_null()) r.eikonal = j.at("eikonal").get<ConstancyReport>();
  const json& fs = j.at("frame_summary");
  fs.at("kappa").get_to(r.kappa);
  fs.at("tau").get_to(r.tau);
  fs.at("continuous").get_to(r.frames_continuous);
  r.verdicts.clear();
  for (const auto& v : j.at("verdicts")) {
    r.verdicts.push_back({v.at("check"), v.at("definition"), v.at("report").get<ConstancyReport>(),
                          v.at("admissible"), v.at("holds")});
  }
  j.at("theorems").get_to(r.theorems);
  j.at("residuals").get_to(r.residuals);
  j.at("skipped").get_to(r.skipped);
  r.series.clear();
  for (const auto& s : j.at("series")) r.series.push_back({s.at("quantity"), s.at("s"), s.at("values")});
}

std::string report_to_string(const RunReport& r) { return json(r).dump(2) + "\n"; }

RunReport report_from_string(const std::string& text) {
  try {
    return json::parse(text).get<RunReport>();
  } catch (const json::exception& e) {
    throw IoError(std::string("malformed report: ") + e.what());
  }
}

// ---------------------------------------------------------------------------
// Orchestration

namespace {

class Run {
 public:
  Run(RunReport& rep, const ScalarField& f, const FrameTrace& tr, const TolerancePolicy& policy)
      : rep_(rep), f_(f), tr_(tr), policy_(policy), s_(tr.parameters()) {}

  void series(const std::string& quantity, std::vector<double> values) {
    if (!named_.insert(quantity).second) return;
    rep_.series.push_back({quantity, s_, std::move(values)});
  }

  void verdict(const std::string& check, const HelixVerdict& v, const std::string& quantity) {
    rep_.verdicts.push_back({check, v.name, v.report, v.admissible, v.holds()});
    series(quantity, v.samples);
  }

  void run(const std::string& check);

 private:
  void frame_residuals();

  RunReport& rep_;
  const ScalarField& f_;
  const FrameTrace& tr_;
  const TolerancePolicy& policy_;
  std::vector<double> s_;
  std::set<std::string> named_;
};

void Run::frame_residuals() {
  const auto ode = frame_ode_residuals(tr_);
  const auto rot = darboux_rotation_residuals(tr_);
  rep_.residuals["frame_ode"] = *std::max_element(ode.begin(), ode.end());
  rep_.residuals["darboux_rotation"] = *std::max_element(rot.begin(), rot.end());
  series("kappa", tr_.kappas());
  series("tau", tr_.taus());
  series("frame ODE residual", ode);
  series("Darboux rotation residual", rot);
  if (tr_.kind() == FrameKind::NonNull) {
    series("eps3 kappa^2 + eps1 tau^2", darboux_squares(tr_));
    try {
      series("sigma", sigma_invariant(tr_, policy_).samples);
    } catch (const LightlikeDarboux& e) {
      rep_.skipped["sigma"] = e.what();
    }
  }
}

void Run::run(const std::string& check) {
  if (check == "eikonal") {
    const auto norms = gradient_norms(f_, tr_);
    rep_.eikonal = detect_constancy(norms, policy_);
    series("||grad f||", norms);
  } else if (check == "frame_residuals") {
    frame_residuals();
  } else if (check == "slant_helix") {
    verdict(check, slant_helix_check(f_, tr_, policy_), "g(grad f, V2)");
  } else if (check == "darboux_helix") {
    verdict(check, darboux_helix_check(f_, tr_, policy_), "g(W0, grad f)");
  } else if (check == "non_normed_darboux") {
    verdict(check, non_normed_darboux_check(f_, tr_, policy_), "g(grad f, W)");
  } else if (check == "corollary_2_1") {
    rep_.theorems.push_back(corollary_2_1_check(f_, tr_, policy_));
    series("eps3 kappa^2 + eps1 tau^2", darboux_squares(tr_));
  } else if (check == "theorem_2_1") {
    rep_.theorems.push_back(theorem_2_1_check(f_, tr_, policy_));
  } else if (check == "corollary_2_2") {
    rep_.theorems.push_back(corollary_2_2_check(f_, tr_, policy_));
  } else if (check == "theorem_2_2") {
    rep_.theorems.push_back(theorem_2_2_check(f_, tr_, policy_));
  } else if (check == "theorem_2_3") {
    rep_.theorems.push_back(theorem_2_3_check(f_, tr_, policy_));
  } else if (check == "corollary_2_3") {
    rep_.theorems.push_back(corollary_2_3_check(f_, tr_, policy_));
  } else if (check == "null_helix") {
    verdict(check, null_helix_check(f_, tr_, policy_), "g(grad f, V1)");
  } else if (check == "null_v2_slant") {
    verdict(check, null_slant_check(f_, tr_, 2, policy_), "g(grad f, V2)");
  } else if (check == "null_v3_slant") {
    verdict(check, null_slant_check(f_, tr_, 3, policy_), "g(grad f, V3)");
  } else if (check == "null_darboux") {
    verdict(check, null_darboux_check(f_, tr_, policy_), "g(grad f, W)");
  } else if (check == "theorem_3_1") {
    rep_.theorems.push_back(theorem_3_1_check(f_, tr_, policy_));
  } else if (check == "theorem_3_2") {
    rep_.theorems.push_back(theorem_3_2_check(f_, tr_, policy_));
  } else if (check == "theorem_3_3") {
    rep_.theorems.push_back(theorem_3_3_check(f_, tr_, policy_));
    series("det(V2', V2'', V2''')", theorem_3_3_determinants(tr_));
    series("tau^5 (kappa/tau)'", theorem_3_3_closed_forms(tr_));
  } else if (check == "theorem_3_4") {
    rep_.theorems.push_back(theorem_3_4_check(f_, tr_, policy_));
  } else if (check == "corollary_3_1") {
    rep_.theorems.push_back(corollary_3_1_check(f_, tr_, policy_));
  } else if (check == "theorem_3_5") {
    rep_.theorems.push_back(theorem_3_5_check(f_, tr_, policy_));
  } else {
    throw UnknownKey("unknown check '" + check + "'");
  }
}

}  // namespace

RunReport run_analysis(const AnalysisConfig& cfg) {
  cfg.policy.validate();
  RunReport rep;
  rep.config_text = serialize_config(cfg);
  const ScalarField field = cfg.scalar_field();
  rep.convention = to_string(field.convention);
  rep.arc_length = cfg.arc_length;
  rep.n_samples = cfg.samples;

  const auto spec = std::make_shared<CurveSpec>(cfg.curve_spec());
  std::shared_ptr<const ParametricCurve> curve = spec;
  std::vector<double> grid = spec->grid();
  if (cfg.arc_length) {
    const auto arc = std::make_shared<ArcLengthCurve>(reparameterize_arc_length(spec));
    grid = linspace(0.0, arc->total_length(), cfg.samples);
    curve = arc;
  }
  const FrameTrace tr = frame_trace(curve, grid);
  if (tr.kind() == FrameKind::Null) {
    rep.causal_kind = "null";
  } else {
    rep.causal_kind = tr.nonnull().front().eps1 > 0 ? "spacelike" : "timelike";
  }
  rep.kappa = detect_constancy(tr.kappas(), cfg.policy);
  rep.tau = detect_constancy(tr.taus(), cfg.policy);
  rep.frames_continuous = frames_continuous(tr);

  const auto& applicable = tr.kind() == FrameKind::Null ? null_checks() : nonnull_checks();
  std::vector<std::string> requested = cfg.checks.value_or(applicable);
  Run run(rep, field, tr, cfg.policy);
  for (const auto& check : applicable) {
    if (std::find(requested.begin(), requested.end(), check) == requested.end()) continue;
    try {
      run.run(check);
    } catch (const GeometryError& e) {
      rep.skipped[check] = e.what();
    }
  }
  for (const auto& check : requested) {
    if (std::find(applicable.begin(), applicable.end(), check) == applicable.end()) {
      rep.skipped[check] = "not applicable to " + rep.causal_kind + " curves";
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Plot data

std::string series_file_stem(const std::string& quantity) {
  std::string out;
  for (char ch : quantity) {
    if (std::isalnum(static_cast<unsigned char>(ch))) {
      out += ch;
    } else if (ch == '\'') {
      out += 'p';
    } else if (!out.empty() && out.back() != '_') {
      out += '_';
    }
  }
  while (!out.empty() && out.back() == '_') out.pop_back();
  return out;
}

std::vector<std::filesystem::path> emit_plot_data(const RunReport& report, const std::filesystem::path& dir) {
  std::vector<std::filesystem::path> written;
  if (report.series.empty()) return written;
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create plot directory '" + dir.string() + "': " + ec.message());
  for (const auto& s : report.series) {
    const auto path = dir / (series_file_stem(s.quantity) + ".csv");
    std::ofstream out(path);
    if (!out) throw IoError("cannot write '" + path.string() + "'");
    out << "# quantity: " << s.quantity << "\n";
    out << "# convention: " << report.convention << " gradient; coordinate 1 is timelike\n";
    out << "s,\"" << s.quantity << "\"\n";
    char line[96];
    for (std::size_t k = 0; k < s.s.size(); ++k) {
      std::snprintf(line, sizeof line, "%.17g,%.17g\n", s.s[k], s.values[k]);
      out << line;
    }
    if (!out) throw IoError("write failed for '" + path.string() + "'");
    written.push_back(path);
  }
  return written;
}

}  // namespace minkhelix
