#include "ritzmaj/report_json.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "ritzmaj/matrix_io.hpp"
#include "ritzmaj/rng.hpp"

namespace ritzmaj {

namespace {

Json number(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

Json vec(const RealVector& v) {
  Json a = Json::array();
  for (double d : v) a.push_back(number(d));
  return a;
}

}  // namespace

std::string seed_hex(std::uint64_t seed) {
  char buf[19];
  std::snprintf(buf, sizeof buf, "0x%016llx", static_cast<unsigned long long>(seed));
  return buf;
}

Json to_json(const MajorizationVerdict& v) {
  Json j;
  j["holds"] = v.holds;
  j["mode"] = v.mode == MajorizationMode::weak ? "weak" : "strong";
  j["prefix_slacks"] = vec(v.prefix_slacks);
  j["total_gap"] = number(v.total_gap);
  j["worst_prefix"] = v.worst_prefix;
  j["tolerance_used"] = number(v.tolerance_used);
  return j;
}

Json to_json(const BoundCheckReport& r) {
  Json j;
  j["bound"] = std::string(to_string(r.bound));
  j["applicable"] = r.applicable;
  j["reason"] = r.reason;
  j["holds"] = r.applicable ? Json(r.verdict.holds) : Json(nullptr);
  j["lhs"] = vec(r.lhs);
  j["rhs"] = vec(r.rhs);
  j["prefix_slacks"] = vec(r.verdict.prefix_slacks);
  j["worst_prefix"] = r.verdict.worst_prefix;
  j["angles_rad"] = vec(r.angles.values());
  j["spread"] = number(r.spread);
  j["invariant_side"] = std::string(to_string(r.invariant_side));
  j["tolerance"] = number(r.tolerance);
  j["relation"] = std::string(to_string(r.relation));
  j["lhs_paired"] = vec(r.lhs_paired);
  j["unbounded_rhs"] = r.unbounded_rhs;
  j["proven"] = r.proven;
  j["class_x"] = std::string(to_string(r.tag_x));
  j["class_y"] = std::string(to_string(r.tag_y));
  j["tolerance_used"] = number(r.verdict.tolerance_used);
  return j;
}

Json to_json(const FuzzConfig& cfg) {
  Json j;
  j["trials"] = cfg.trials;
  j["n_range"] = {cfg.n_min, cfg.n_max};
  j["k_range"] = {cfg.k_min, cfg.k_max};
  j["spectrum_model"] = std::string(to_string(cfg.spectrum_model));
  j["angle_model"] = std::string(to_string(cfg.angle_model));
  j["invariance_mode"] = std::string(to_string(cfg.invariance_mode));
  j["seed"] = cfg.seed;
  j["tolerance"] = cfg.tolerance;
  j["inv_tolerance"] = cfg.inv_tolerance;
  Json b = Json::array();
  for (BoundId id : cfg.bounds) b.push_back(std::string(to_string(id)));
  j["bounds"] = b;
  if (cfg.rhs_scale != 1.0) j["rhs_scale"] = cfg.rhs_scale;
  return j;
}

Json to_json(const CampaignReport& r, bool include_wall_time) {
  Json j;
  j["config"] = to_json(r.config);
  j["rng_algorithm"] = r.rng_algorithm;
  Json counters;
  for (const auto& [id, c] : r.counters) {
    Json cj;
    cj["applicable"] = c.applicable;
    cj["held"] = c.held;
    cj["violated"] = c.violated;
    cj["inapplicable"] = c.inapplicable;
    cj["worst_slack"] = number(c.worst_slack);
    counters[std::string(to_string(id))] = cj;
  }
  j["counters"] = counters;
  j["skipped"] = r.skipped;
  j["skip_reasons"] = r.skip_reasons;
  j["sin2_regime_trials"] = r.sin2_regime_trials;
  j["theorem_violations"] = r.theorem_violations();
  j["conjecture_findings"] = r.conjecture_findings();
  Json vs = Json::array();
  for (const auto& v : r.violations) {
    Json vj;
    vj["trial"] = v.trial;
    vj["seed"] = v.trial_seed;
    vj["seed_hex"] = seed_hex(v.trial_seed);
    vj["digest"] = v.digest;
    vj["kind"] = std::string(to_string(v.kind));
    vj["replay_confirmed"] = v.replay_confirmed;
    vj["margin"] = number(v.margin);
    vj["report"] = to_json(v.report);
    vs.push_back(vj);
  }
  j["violations"] = vs;
  Json sh = Json::array();
  for (const auto& s : r.shrunk) {
    Json sj;
    sj["violation"] = s.violation;
    sj["steps"] = s.result.steps;
    sj["n"] = s.result.a.order();
    sj["k"] = s.result.x.dim();
    sj["a"] = matrix_to_json(s.result.a.matrix());
    sj["x"] = matrix_to_json(s.result.x.matrix());
    sj["y"] = matrix_to_json(s.result.y.matrix());
    sj["report"] = to_json(s.result.report);
    sh.push_back(sj);
  }
  j["shrunk"] = sh;
  if (include_wall_time) j["wall_time_s"] = r.wall_time_s;
  return j;
}

Json to_json(const SuiteReport& r) {
  Json j;
  j["seed"] = r.seed;
  j["rng_algorithm"] = std::string(Rng::kAlgorithm);
  Json props = Json::array();
  for (const auto& p : r.results) {
    Json pj;
    pj["name"] = p.name;
    pj["trials"] = p.trials;
    pj["failures"] = p.failures;
    pj["worst_slack"] = number(p.worst_slack);
    props.push_back(pj);
  }
  j["properties"] = props;
  j["all_passed"] = r.all_passed();
  return j;
}

Json to_json(const IntermediateRecord& r) {
  Json j;
  j["angles_rad"] = vec(r.angles.values());
  j["spread"] = r.spread;
  j["xax"] = matrix_to_json(r.xax);
  j["yay"] = matrix_to_json(r.yay);
  j["c_a11_c"] = matrix_to_json(r.c_a11_c);
  j["sh_a22_s"] = matrix_to_json(r.sh_a22_s);
  j["lhs"] = vec(r.lhs);
  j["conjecture"] = to_json(r.conjecture);
  j["majorant"] = vec(r.majorant);
  j["majorant_abs_sorted"] = vec(r.majorant_abs_sorted);
  j["bound_rhs"] = vec(r.bound_rhs);
  j["majorant_verdict"] = to_json(r.majorant_verdict);
  j["cs_identity_error"] = r.cs_identity_error;
  return j;
}

Json matrix_to_json(const CMatrix& m) {
  Json j;
  j["rows"] = m.rows();
  j["cols"] = m.cols();
  Json re = Json::array(), im = Json::array();
  bool real = true;
  for (Index i = 0; i < m.rows(); ++i) {
    Json rr = Json::array(), ri = Json::array();
    for (Index c = 0; c < m.cols(); ++c) {
      rr.push_back(number(m(i, c).real()));
      ri.push_back(number(m(i, c).imag()));
      real = real && m(i, c).imag() == 0.0;
    }
    re.push_back(rr);
    im.push_back(ri);
  }
  j["re"] = re;
  if (!real) j["im"] = im;
  return j;
}

std::string campaign_csv(const CampaignReport& r) {
  std::ostringstream out;
  out << "bound,applicable,held,violated,inapplicable,worst_slack\n";
  for (const auto& [id, c] : r.counters) {
    out << to_string(id) << ',' << c.applicable << ',' << c.held << ',' << c.violated << ',' << c.inapplicable << ','
        << (std::isfinite(c.worst_slack) ? format_double(c.worst_slack) : std::string()) << '\n';
  }
  return out.str();
}

}  // namespace ritzmaj
