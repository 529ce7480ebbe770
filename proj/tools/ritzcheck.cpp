// ritzcheck: principal angles, Ritz values, bound checks, fuzz campaigns and
// the two worked examples from the command line.
//
// Exit status: 0 success, 1 usage/parse/contract error, 2 a bound or a
// reproduction failed.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "ritzmaj/errors.hpp"
#include "ritzmaj/matrix_io.hpp"
#include "ritzmaj/report_json.hpp"
#include "ritzmaj/rng.hpp"

using namespace ritzmaj;

namespace {

constexpr int kOk = 0;
constexpr int kUsage = 1;
constexpr int kFailed = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

double default_tolerance() {
  const char* env = std::getenv("RITZ_TOL");
  if (!env || !*env) return 1e-9;
  char* end = nullptr;
  const double v = std::strtod(env, &end);
  if (*end != '\0' || !(v > 0) || !std::isfinite(v)) throw UsageError(std::string("RITZ_TOL is not a positive number: ") + env);
  return v;
}

std::string timestamp() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::uint64_t auto_seed(std::optional<std::uint64_t> seed) {
  if (seed) return *seed;
  std::random_device rd;
  const std::uint64_t s = (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
  std::cerr << "seed: " << s << '\n';
  return s;
}

HermitianMatrix load_hermitian(const std::string& path) {
  return HermitianMatrix::from_full(read_matrix_file(path).matrix());
}

OrthonormalBasis load_basis(const std::string& path, bool fix) {
  const DenseMatrix m = read_matrix_file(path);
  if (fix) return orthonormalize(m);
  const double err = orthonormality_error(m.matrix());
  if (m.cols() > m.rows() || !(err <= Tolerances{}.orth)) {
    std::ostringstream msg;
    msg << path << ": columns are not orthonormal (max |QᴴQ - I| = " << err
        << "); rerun with --orthonormalize to use an orthonormal basis of their span";
    throw UsageError(msg.str());
  }
  return OrthonormalBasis(m.matrix());
}

// Radians, or degrees with a `deg:` prefix (on the whole list or per value).
RealVector parse_angles(std::string text) {
  bool all_deg = false;
  if (text.rfind("deg:", 0) == 0) {
    all_deg = true;
    text.erase(0, 4);
  }
  RealVector out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    bool deg = all_deg;
    if (tok.rfind("deg:", 0) == 0) {
      deg = true;
      tok.erase(0, 4);
    }
    std::size_t used = 0;
    double v;
    try {
      v = std::stod(tok, &used);
    } catch (const std::exception&) {
      throw UsageError("not an angle: '" + tok + "'");
    }
    if (used != tok.size()) throw UsageError("not an angle: '" + tok + "'");
    out.push_back(deg ? v * std::numbers::pi / 180.0 : v);
  }
  if (out.empty()) throw UsageError("empty angle list");
  return out;
}

std::pair<std::size_t, std::size_t> parse_range(const std::string& text, const char* what) {
  const auto colon = text.find(':');
  try {
    if (colon == std::string::npos) {
      const auto v = std::stoul(text);
      return {v, v};
    }
    return {std::stoul(text.substr(0, colon)), std::stoul(text.substr(colon + 1))};
  } catch (const std::exception&) {
    throw UsageError(std::string("bad ") + what + " range '" + text + "', expected min:max");
  }
}

std::vector<BoundId> parse_bounds(const std::string& text) {
  if (text == "all") return {kAllBounds.begin(), kAllBounds.end()};
  std::vector<BoundId> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    auto b = bound_from_string(tok);
    if (!b) throw UsageError("unknown bound '" + tok + "'");
    out.push_back(*b);
  }
  return out;
}

std::string fixed6(double v) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(6) << v;
  return s.str();
}

std::string join(const RealVector& v, const std::function<std::string(double)>& f = format_double) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + f(v[i]);
  return s;
}

void print_report_line(const BoundCheckReport& r) {
  std::cout << std::left << std::setw(22) << to_string(r.bound);
  if (!r.applicable) {
    std::cout << "n/a      " << r.reason << '\n';
    return;
  }
  std::cout << (r.verdict.holds ? "holds    " : "VIOLATED ") << "min_slack=" << format_double(r.verdict.min_slack())
            << " prefix=" << r.verdict.worst_prefix;
  if (r.unbounded_rhs) std::cout << " (unbounded rhs)";
  if (!r.proven) std::cout << " (unproven here)";
  std::cout << '\n';
}

void emit(const Json& j) { std::cout << j.dump(2) << '\n'; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Ritz value error bounds: angles, checks, campaigns and reproductions"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for every subcommand");

  std::string format = "text";
  auto add_format = [&format](CLI::App* c) {
    c->add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json"}));
  };
  bool orthonormalize_input = false;
  bool no_timestamp = false;
  std::optional<double> tol;
  double inv_tol = 1e-8;

  // angles
  std::string x_path, y_path, a_path;
  auto* angles = app.add_subcommand("angles", "Principal angles between span(X) and span(Y)");
  angles->add_option("X", x_path, "Basis file of X")->required()->check(CLI::ExistingFile);
  angles->add_option("Y", y_path, "Basis file of Y")->required()->check(CLI::ExistingFile);
  angles->add_flag("--orthonormalize", orthonormalize_input, "Replace non-orthonormal input by a basis of its span");
  add_format(angles);

  // ritz
  auto* ritz = app.add_subcommand("ritz", "Ritz values of A on span(X) and invariance class of X");
  ritz->add_option("A", a_path, "Hermitian matrix file")->required()->check(CLI::ExistingFile);
  ritz->add_option("X", x_path, "Basis file")->required()->check(CLI::ExistingFile);
  ritz->add_flag("--orthonormalize", orthonormalize_input, "Replace non-orthonormal input by a basis of its span");
  ritz->add_option("--inv-tol", inv_tol, "Invariance tolerance relative to spr(A)");
  add_format(ritz);

  // check
  std::string bound_sel = "all";
  double rhs_scale = 1.0;
  auto* check = app.add_subcommand("check", "Check Ritz value bounds for one (A, X, Y)");
  check->add_option("A", a_path, "Hermitian matrix file")->required()->check(CLI::ExistingFile);
  check->add_option("X", x_path, "Basis file of X")->required()->check(CLI::ExistingFile);
  check->add_option("Y", y_path, "Basis file of Y")->required()->check(CLI::ExistingFile);
  check->add_option("--bound", bound_sel, "Bound name, comma list, or all");
  check->add_option("--tol", tol, "Relative tolerance (default 1e-9 or $RITZ_TOL)");
  check->add_option("--inv-tol", inv_tol, "Invariance tolerance relative to spr(A)");
  check->add_flag("--orthonormalize", orthonormalize_input, "Replace non-orthonormal input by a basis of its span");
  check->add_flag("--no-timestamp", no_timestamp, "Omit generated_at from JSON output");
  check->add_option("--rhs-scale", rhs_scale)->group("")->check(CLI::PositiveNumber);
  add_format(check);

  // fuzz
  FuzzConfig cfg;
  std::string n_range = "2:12", k_range = "1:6", mode = "invariant-x", angle_model = "mixed", spectrum = "mixed";
  std::string bounds = "all", out_path, findings_dir = "findings", csv_path;
  std::optional<std::uint64_t> seed;
  bool strict = false;
  auto* fuzz = app.add_subcommand("fuzz", "Seeded campaign over random instances");
  fuzz->add_option("--trials", cfg.trials, "Number of trials");
  fuzz->add_option("--n", n_range, "Order range min:max");
  fuzz->add_option("--k", k_range, "Subspace dimension range min:max");
  fuzz->add_option("--seed", seed, "Campaign seed (printed on stderr when omitted)");
  fuzz->add_option("--mode", mode, "invariant-x | none | contiguous-extreme | half-spectrum | general-invariant");
  fuzz->add_option("--angles-model", angle_model, "uniform | graded | near-zero | right-angles | mixed");
  fuzz->add_option("--spectrum", spectrum, "uniform | clustered | integer | two-point | mixed");
  fuzz->add_option("--bounds", bounds, "Bound names, comma list, or all");
  fuzz->add_option("--tol", tol, "Relative tolerance (default 1e-9 or $RITZ_TOL)");
  fuzz->add_option("--inv-tol", cfg.inv_tolerance, "Invariance tolerance relative to spr(A)");
  fuzz->add_option("--jobs", cfg.jobs, "Worker threads");
  fuzz->add_option("--max-shrink", cfg.max_shrink, "Conjecture findings to shrink");
  fuzz->add_option("--out", out_path, "Write the campaign report JSON here");
  fuzz->add_option("--findings", findings_dir, "Directory for violating instances");
  fuzz->add_option("--csv", csv_path, "Write a per-bound CSV summary here");
  fuzz->add_flag("--strict", strict, "Fail on conjecture findings too");
  fuzz->add_flag("--no-timestamp", no_timestamp, "Omit generated_at and wall time from the report");
  fuzz->add_option("--rhs-scale", cfg.rhs_scale)->group("")->check(CLI::PositiveNumber);

  // repro
  std::size_t m = 1;
  std::string angle_text;
  auto* repro = app.add_subcommand("repro", "Reproduce the worked examples");
  repro->require_subcommand(1);
  auto* sharp = repro->add_subcommand("sharp", "Equality case A = diag(I, -I)");
  sharp->add_option("--m", m, "Block size")->check(CLI::PositiveNumber);
  sharp->add_option("--angles", angle_text, "Comma-separated angles, radians or deg:");
  sharp->add_option("--seed", seed, "Seed for random angles when --angles is omitted");
  add_format(sharp);
  auto* inter = repro->add_subcommand("intermediate", "4x4 example with a failing intermediate vector");
  add_format(inter);

  // properties
  std::size_t prop_trials = 1000, max_n = 8;
  auto* props = app.add_subcommand("properties", "Majorization property suites");
  props->add_option("--seed", seed, "Suite seed (printed on stderr when omitted)");
  props->add_option("--trials", prop_trials, "Trials per property");
  props->add_option("--max-n", max_n, "Largest matrix order");
  props->add_option("--tol", tol, "Relative tolerance (default 1e-9 or $RITZ_TOL)");
  add_format(props);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    const bool json = format == "json";

    if (angles->parsed()) {
      const auto x = load_basis(x_path, orthonormalize_input);
      const auto y = load_basis(y_path, orthonormalize_input);
      if (x.ambient_dim() != y.ambient_dim() || x.dim() != y.dim())
        throw UsageError("X and Y must have the same shape");
      const AngleVector t = principal_angles(x, y);
      RealVector deg;
      for (double v : t.values()) deg.push_back(v * 180.0 / std::numbers::pi);
      if (json) {
        Json j;
        j["angles_rad"] = t.values();
        j["angles_deg"] = deg;
        j["gap"] = gap(x, y);
        emit(j);
      } else {
        std::cout << join(t.values(), fixed6) << '\n' << "deg: " << join(deg, fixed6) << '\n';
      }
      return kOk;
    }

    if (ritz->parsed()) {
      const auto a = load_hermitian(a_path);
      const auto x = load_basis(x_path, orthonormalize_input);
      const RealVector rv = ritz_values(a, x);
      const InvariantClass cls = classify_invariant(a, x, inv_tol);
      if (json) {
        Json j;
        j["ritz_values"] = rv;
        j["spread"] = spread(a);
        j["class"] = std::string(to_string(cls.tag));
        j["residual"] = cls.residual;
        emit(j);
      } else {
        std::cout << join(rv) << '\n'
                  << "spread: " << format_double(spread(a)) << '\n'
                  << "class: " << to_string(cls.tag) << " (residual " << format_double(cls.residual) << ")\n";
      }
      return kOk;
    }

    if (check->parsed()) {
      const auto a = load_hermitian(a_path);
      const auto x = load_basis(x_path, orthonormalize_input);
      const auto y = load_basis(y_path, orthonormalize_input);
      if (x.ambient_dim() != a.order() || y.ambient_dim() != a.order() || x.dim() != y.dim())
        throw UsageError("A, X and Y have incompatible shapes");
      const CheckOptions opts{tol.value_or(default_tolerance()), inv_tol, rhs_scale};
      const auto analysis = analyze(a, x, y, opts);
      const auto reports = check_bounds(analysis, parse_bounds(bound_sel), opts);
      const bool fail = std::any_of(reports.begin(), reports.end(), [](const auto& r) { return r.violated(); });
      if (json) {
        Json j;
        if (!no_timestamp) j["generated_at"] = timestamp();
        j["all_hold"] = !fail;
        Json arr = Json::array();
        for (const auto& r : reports) arr.push_back(to_json(r));
        j["reports"] = arr;
        emit(j);
      } else {
        std::cout << "angles: " << join(analysis.angles.values()) << '\n'
                  << "spread: " << format_double(analysis.spread) << "  invariant side: "
                  << to_string(analysis.side) << '\n';
        for (const auto& r : reports) print_report_line(r);
      }
      return fail ? kFailed : kOk;
    }

    if (fuzz->parsed()) {
      std::tie(cfg.n_min, cfg.n_max) = parse_range(n_range, "n");
      std::tie(cfg.k_min, cfg.k_max) = parse_range(k_range, "k");
      auto md = invariance_mode_from_string(mode);
      if (!md) throw UsageError("unknown mode '" + mode + "'");
      auto am = angle_model_from_string(angle_model);
      if (!am) throw UsageError("unknown angle model '" + angle_model + "'");
      auto sm = spectrum_model_from_string(spectrum);
      if (!sm) throw UsageError("unknown spectrum model '" + spectrum + "'");
      cfg.invariance_mode = *md;
      cfg.angle_model = *am;
      cfg.spectrum_model = *sm;
      cfg.bounds = parse_bounds(bounds);
      cfg.tolerance = tol.value_or(default_tolerance());
      cfg.seed = auto_seed(seed);

      const CampaignReport rep = run_campaign(cfg);
      Json j = to_json(rep, !no_timestamp);
      if (!no_timestamp) j["generated_at"] = timestamp();
      if (!out_path.empty()) {
        std::ofstream out(out_path);
        if (!out) throw UsageError("cannot write " + out_path);
        out << j.dump(2) << '\n';
      }
      if (!csv_path.empty()) {
        std::ofstream out(csv_path);
        if (!out) throw UsageError("cannot write " + csv_path);
        out << campaign_csv(rep);
      }
      std::size_t persisted = 0;
      if (!rep.violations.empty()) persisted = persist_findings(rep, findings_dir);

      std::cout << "trials=" << cfg.trials << " skipped=" << rep.skipped << " sin2_regime=" << rep.sin2_regime_trials
                << " theorem_violations=" << rep.theorem_violations()
                << " conjecture_findings=" << rep.conjecture_findings() << " seed=" << cfg.seed;
      if (persisted) std::cout << " findings=" << findings_dir;
      std::cout << '\n';
      if (format == "json" && out_path.empty()) emit(j);
      const bool fail = rep.theorem_violations() > 0 || (strict && rep.conjecture_findings() > 0);
      return fail ? kFailed : kOk;
    }

    if (sharp->parsed()) {
      RealVector t;
      if (!angle_text.empty()) {
        t = parse_angles(angle_text);
        if (t.size() != m) throw UsageError("--angles needs exactly m values");
      } else {
        Rng rng(auto_seed(seed));
        for (std::size_t i = 0; i < m; ++i) t.push_back(rng.uniform(0.0, std::numbers::pi / 2));
      }
      const auto r = repro_sharp(m, AngleVector::from_unsorted(t));
      if (json) {
        emit(to_json(r));
      } else {
        std::cout << "angles: " << join(r.angles.values()) << '\n'
                  << "lhs:    " << join(r.lhs) << '\n'
                  << "rhs:    " << join(r.rhs) << '\n'
                  << "prefix slacks: " << join(r.verdict.prefix_slacks) << '\n'
                  << "equality holds within 1e-10\n";
      }
      return kOk;
    }

    if (inter->parsed()) {
      const auto rec = repro_intermediate_counterexample();
      if (json) {
        emit(to_json(rec));
      } else {
        std::cout << "angles: " << join(rec.angles.values()) << '\n'
                  << "spread: " << format_double(rec.spread) << '\n'
                  << "lhs: " << join(rec.lhs) << "  rhs: " << join(rec.bound_rhs) << "  bound holds: "
                  << (rec.conjecture.holds() ? "yes" : "no") << '\n'
                  << "a = " << join(rec.majorant) << "  |a| sorted = " << join(rec.majorant_abs_sorted) << '\n'
                  << "|a| weakly majorized by rhs: " << (rec.majorant_verdict.holds ? "yes" : "no")
                  << ", fails at prefix " << rec.majorant_verdict.worst_prefix << " with slack "
                  << format_double(rec.majorant_verdict.min_slack()) << '\n';
      }
      return kOk;
    }

    if (props->parsed()) {
      const auto rep = property_suites(auto_seed(seed), prop_trials, tol.value_or(default_tolerance()), max_n);
      if (json) {
        emit(to_json(rep));
      } else {
        for (const auto& r : rep.results)
          std::cout << std::left << std::setw(24) << r.name << r.trials << " trials, " << r.failures
                    << " failures, worst slack " << format_double(r.worst_slack) << '\n';
      }
      return rep.all_passed() ? kOk : kFailed;
    }
  } catch (const ReproductionFailure& e) {
    std::cerr << "reproduction failed: " << e.what() << '\n';
    return kFailed;
  } catch (const ParseError& e) {
    std::cerr << e.what() << '\n';
    return kUsage;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
