#include "ritzmaj/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <numbers>
#include <numeric>
#include <thread>

#include "ritzmaj/errors.hpp"
#include "ritzmaj/matrix_io.hpp"
#include "ritzmaj/report_json.hpp"
#include "ritzmaj/rng.hpp"

namespace ritzmaj {

namespace {

template <class E, std::size_t N>
std::optional<E> lookup(const std::array<std::pair<E, std::string_view>, N>& table, std::string_view s) {
  for (const auto& [e, name] : table)
    if (name == s) return e;
  return std::nullopt;
}

template <class E, std::size_t N>
std::string_view name_of(const std::array<std::pair<E, std::string_view>, N>& table, E e) {
  for (const auto& [v, name] : table)
    if (v == e) return name;
  return "?";
}

constexpr std::array<std::pair<SpectrumModel, std::string_view>, 5> kSpectrumNames{{
    {SpectrumModel::uniform_interval, "uniform"},
    {SpectrumModel::clustered, "clustered"},
    {SpectrumModel::integer, "integer"},
    {SpectrumModel::two_point, "two-point"},
    {SpectrumModel::mixed, "mixed"},
}};

constexpr std::array<std::pair<AngleModel, std::string_view>, 5> kAngleNames{{
    {AngleModel::uniform, "uniform"},
    {AngleModel::graded_powers, "graded"},
    {AngleModel::near_zero, "near-zero"},
    {AngleModel::mixed_with_right_angles, "right-angles"},
    {AngleModel::mixed, "mixed"},
}};

constexpr std::array<std::pair<InvarianceMode, std::string_view>, 5> kModeNames{{
    {InvarianceMode::invariant_x, "invariant-x"},
    {InvarianceMode::none, "none"},
    {InvarianceMode::contiguous_extreme, "contiguous-extreme"},
    {InvarianceMode::half_spectrum, "half-spectrum"},
    {InvarianceMode::general_invariant, "general-invariant"},
}};

RealVector sample_spectrum(SpectrumModel model, std::size_t n, Rng& rng) {
  RealVector s(n);
  switch (model) {
    case SpectrumModel::uniform_interval: {
      const double lo = rng.uniform(-5.0, 5.0);
      const double width = std::pow(10.0, rng.uniform(-1.0, 1.0));
      for (double& v : s) v = lo + width * rng.uniform();
      break;
    }
    case SpectrumModel::clustered: {
      // Jitter keeps cluster members distinct but far below every tolerance
      // that could separate them.
      const std::size_t centers = rng.between(1, 3);
      RealVector c(centers);
      for (double& v : c) v = rng.uniform(-1.0, 1.0);
      for (double& v : s) v = c[rng.index(centers)] + 1e-6 * rng.uniform(-1.0, 1.0);
      break;
    }
    case SpectrumModel::integer:
      for (double& v : s) v = static_cast<double>(rng.between(0, 6)) - 3.0;
      break;
    case SpectrumModel::two_point:
      for (double& v : s) v = rng.bernoulli(0.5) ? 1.0 : -1.0;
      if (n >= 2) {
        const std::size_t i = rng.index(n);
        std::size_t j = rng.index(n - 1);
        if (j >= i) ++j;
        s[i] = 1.0;
        s[j] = -1.0;
      }
      break;
    case SpectrumModel::mixed:
      break;
  }
  return s;
}

double sample_angle(AngleModel model, Rng& rng) {
  constexpr double half_pi = std::numbers::pi / 2;
  switch (model) {
    case AngleModel::near_zero:
      return std::pow(10.0, rng.uniform(-7.0, -3.0));
    case AngleModel::mixed_with_right_angles:
      return rng.bernoulli(0.35) ? half_pi : rng.uniform(0.0, half_pi);
    default:
      return rng.uniform(0.0, half_pi);
  }
}

RealVector sample_angles(AngleModel model, std::size_t nonzero, std::size_t k, Rng& rng) {
  RealVector t(k, 0.0);
  if (model == AngleModel::graded_powers) {
    const double theta0 = rng.uniform(0.05, std::numbers::pi / 2);
    const double ratio = rng.uniform(0.02, 0.6);
    double v = theta0;
    for (std::size_t i = 0; i < nonzero; ++i, v *= ratio) t[i] = v;
  } else {
    for (std::size_t i = 0; i < nonzero; ++i) t[i] = sample_angle(model, rng);
  }
  return t;
}

std::vector<std::size_t> random_subset(std::vector<std::size_t> pool, std::size_t k, Rng& rng) {
  for (std::size_t i = 0; i < k; ++i) std::swap(pool[i], pool[i + rng.index(pool.size() - i)]);
  pool.resize(k);
  std::sort(pool.begin(), pool.end());
  return pool;
}

std::vector<std::size_t> iota(std::size_t from, std::size_t to) {
  std::vector<std::size_t> v(to - from);
  std::iota(v.begin(), v.end(), from);
  return v;
}

struct BoundOutcome {
  bool applicable = false;
  bool holds = false;
  double slack = 0.0;
  std::optional<BoundCheckReport> report;  // kept only for violations
};

struct TrialOutcome {
  std::string skip_reason;
  std::string digest;
  bool sin2_regime = false;
  std::vector<BoundOutcome> bounds;
};

TrialOutcome run_trial(const FuzzConfig& cfg, std::uint64_t seed) {
  TrialOutcome out;
  const CheckOptions opts = cfg.check_options();
  try {
    auto gen = generate_instance(cfg, seed);
    if (!gen.instance) {
      out.skip_reason = gen.skip_reason;
      return out;
    }
    const Instance& inst = *gen.instance;
    const InstanceAnalysis an = analyze(inst.a, inst.x, inst.y, opts);
    out.digest = inst.digest;
    out.sin2_regime = an.sin2_regime();
    for (const auto& r : check_bounds(an, cfg.bounds, opts)) {
      BoundOutcome b;
      b.applicable = r.applicable;
      b.holds = r.verdict.holds;
      b.slack = r.verdict.min_slack() / r.verdict.scale;
      if (r.violated()) b.report = r;
      out.bounds.push_back(std::move(b));
    }
  } catch (const Error& e) {
    out.skip_reason = std::string("numerical: ") + e.what();
    out.bounds.clear();
  }
  return out;
}

constexpr std::size_t kMaxStoredViolations = 1000;

}  // namespace

std::string_view to_string(SpectrumModel m) { return name_of(kSpectrumNames, m); }
std::string_view to_string(AngleModel m) { return name_of(kAngleNames, m); }
std::string_view to_string(InvarianceMode m) { return name_of(kModeNames, m); }
std::optional<SpectrumModel> spectrum_model_from_string(std::string_view s) { return lookup(kSpectrumNames, s); }
std::optional<AngleModel> angle_model_from_string(std::string_view s) { return lookup(kAngleNames, s); }
std::optional<InvarianceMode> invariance_mode_from_string(std::string_view s) { return lookup(kModeNames, s); }

std::string_view to_string(ViolationKind k) { return k == ViolationKind::theorem ? "theorem" : "conjecture"; }

void validate(const FuzzConfig& cfg) {
  if (cfg.trials == 0) throw ContractError("trials must be positive");
  if (cfg.n_min < 1 || cfg.n_min > cfg.n_max) throw ContractError("n range must satisfy 1 <= min <= max");
  if (cfg.n_max > 256) throw CapacityError("n above 256 is not supported");
  if (cfg.k_min < 1 || cfg.k_min > cfg.k_max) throw ContractError("k range must satisfy 1 <= min <= max");
  if (cfg.k_min > std::max<std::size_t>(1, cfg.n_max - 1))
    throw ContractError("k min leaves no feasible subspace dimension below n max");
  if (!(cfg.tolerance > 0) || !std::isfinite(cfg.tolerance)) throw ContractError("tolerance must be positive");
  if (!(cfg.inv_tolerance > 0) || !std::isfinite(cfg.inv_tolerance))
    throw ContractError("invariance tolerance must be positive");
  if (cfg.bounds.empty()) throw ContractError("no bounds selected");
  if (cfg.jobs == 0) throw ContractError("jobs must be positive");
  if (!(cfg.rhs_scale > 0) || !std::isfinite(cfg.rhs_scale)) throw ContractError("rhs scale must be positive");
}

std::uint64_t trial_seed(const FuzzConfig& cfg, std::size_t index) { return derive_seed(cfg.seed, index); }

std::string instance_digest(const HermitianMatrix& a, const OrthonormalBasis& x, const OrthonormalBasis& y) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto mix = [&h](const void* p, std::size_t len) {
    const auto* b = static_cast<const unsigned char*>(p);
    for (std::size_t i = 0; i < len; ++i) {
      h ^= b[i];
      h *= 0x100000001b3ULL;
    }
  };
  for (const CMatrix* m : {&a.matrix(), &x.matrix(), &y.matrix()}) {
    const std::int64_t dims[2] = {m->rows(), m->cols()};
    mix(dims, sizeof dims);
    for (Index c = 0; c < m->cols(); ++c)
      for (Index r = 0; r < m->rows(); ++r) {
        // +0.0 folds the sign of zero so that −0 and 0 digest alike.
        const double parts[2] = {(*m)(r, c).real() + 0.0, (*m)(r, c).imag() + 0.0};
        mix(parts, sizeof parts);
      }
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

GenerationResult generate_instance(const FuzzConfig& cfg, std::uint64_t seed) {
  Rng rng(seed);
  GenerationResult result;

  const std::size_t n_lo = std::max(cfg.n_min, std::min(cfg.n_max, cfg.k_min + 1));
  const std::size_t n = rng.between(n_lo, cfg.n_max);
  const std::size_t k_hi = std::min(cfg.k_max, n >= 2 ? n - 1 : std::size_t{1});
  if (cfg.k_min > k_hi) {
    result.skip_reason = "no feasible k for sampled n";
    return result;
  }
  const std::size_t k = rng.between(cfg.k_min, k_hi);

  SpectrumModel smodel = cfg.spectrum_model;
  if (smodel == SpectrumModel::mixed) smodel = static_cast<SpectrumModel>(rng.index(4));
  AngleModel amodel = cfg.angle_model;
  if (amodel == AngleModel::mixed) amodel = static_cast<AngleModel>(rng.index(4));

  RealVector spectrum = sample_spectrum(smodel, n, rng);
  // With A = cI every subspace is invariant, which defeats mode none.
  for (int redraw = 0; cfg.invariance_mode == InvarianceMode::none && redraw < 20 &&
                       *std::max_element(spectrum.begin(), spectrum.end()) ==
                           *std::min_element(spectrum.begin(), spectrum.end());
       ++redraw)
    spectrum = sample_spectrum(smodel, n, rng);
  HermitianMatrix a = hermitian_from_spectrum(spectrum, rng.next_u64());
  const std::uint64_t basis_seed = rng.next_u64();
  const std::uint64_t perturb_seed = rng.next_u64();
  const std::uint64_t rotate_seed = rng.next_u64();

  std::vector<std::size_t> indices;
  std::optional<OrthonormalBasis> x;
  Rng pick(basis_seed);
  const EigenDecomposition eig = eigh(a);
  const RealVector& sorted = eig.values;

  switch (cfg.invariance_mode) {
    case InvarianceMode::none: {
      const OrthonormalBasis u = random_unitary(static_cast<Index>(n), basis_seed);
      x.emplace(u.matrix().leftCols(static_cast<Index>(k)));
      if (classify_invariant(a, sorted, *x, cfg.inv_tolerance).invariant()) {
        result.skip_reason = "random X is A-invariant";
        return result;
      }
      break;
    }
    case InvarianceMode::invariant_x:
      indices = random_subset(iota(0, n), k, pick);
      break;
    case InvarianceMode::contiguous_extreme:
      indices = pick.bernoulli(0.5) ? iota(0, k) : iota(n - k, n);
      break;
    case InvarianceMode::half_spectrum: {
      const double mid = 0.5 * (sorted.front() + sorted.back());
      std::vector<std::size_t> top, bottom;
      for (std::size_t i = 0; i < n; ++i) {
        if (sorted[i] >= mid) top.push_back(i);
        if (sorted[i] <= mid) bottom.push_back(i);
      }
      const bool prefer_top = pick.bernoulli(0.5);
      const auto& first = prefer_top ? top : bottom;
      const auto& second = prefer_top ? bottom : top;
      if (first.size() >= k)
        indices = random_subset(first, k, pick);
      else if (second.size() >= k)
        indices = random_subset(second, k, pick);
      else {
        result.skip_reason = "no half of the spectrum holds k eigenvalues";
        return result;
      }
      break;
    }
    case InvarianceMode::general_invariant: {
      for (int attempt = 0; attempt < 50 && indices.empty(); ++attempt) {
        auto cand = random_subset(iota(0, n), k, pick);
        const OrthonormalBasis q = invariant_subspace(eig, cand);
        if (classify_invariant(a, sorted, q, cfg.inv_tolerance).tag == InvariantTag::general) indices = cand;
      }
      if (indices.empty()) {
        result.skip_reason = "no general invariant subspace found";
        return result;
      }
      break;
    }
  }

  if (!x) {
    // A random basis of the invariant subspace, not the eigenvectors themselves.
    const OrthonormalBasis q = invariant_subspace(eig, indices);
    const OrthonormalBasis r = random_unitary(static_cast<Index>(k), rotate_seed);
    x.emplace(q.matrix() * r.matrix());
  }

  const std::size_t nonzero = std::min(k, n - k);
  AngleVector target = AngleVector::from_unsorted(sample_angles(amodel, nonzero, k, rng));
  OrthonormalBasis y = perturb_subspace(*x, target, perturb_seed);

  std::string digest = instance_digest(a, *x, y);
  result.instance.emplace(Instance{std::move(a), std::move(*x), std::move(y), seed, std::move(spectrum),
                                   std::move(indices), std::move(target), smodel, amodel, std::move(digest)});
  return result;
}

std::size_t CampaignReport::theorem_violations() const {
  return static_cast<std::size_t>(std::count_if(violations.begin(), violations.end(),
                                                [](const Violation& v) { return v.kind == ViolationKind::theorem; }));
}

std::size_t CampaignReport::conjecture_findings() const { return violations.size() - theorem_violations(); }

const BoundCounters* CampaignReport::find(BoundId b) const {
  for (const auto& [id, c] : counters)
    if (id == b) return &c;
  return nullptr;
}

CampaignReport run_campaign(const FuzzConfig& cfg) {
  validate(cfg);
  const auto start = std::chrono::steady_clock::now();

  std::vector<TrialOutcome> outcomes(cfg.trials);
  const unsigned jobs = static_cast<unsigned>(std::min<std::size_t>(cfg.jobs, cfg.trials));
  auto work = [&](unsigned w) {
    for (std::size_t i = w; i < cfg.trials; i += jobs) outcomes[i] = run_trial(cfg, trial_seed(cfg, i));
  };
  if (jobs <= 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < jobs; ++w) pool.emplace_back(work, w);
    for (auto& t : pool) t.join();
  }

  CampaignReport rep;
  rep.config = cfg;
  rep.rng_algorithm = std::string(Rng::kAlgorithm);
  for (BoundId id : cfg.bounds) rep.counters.emplace_back(id, BoundCounters{});

  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    TrialOutcome& o = outcomes[i];
    if (!o.skip_reason.empty()) {
      ++rep.skipped;
      if (std::find(rep.skip_reasons.begin(), rep.skip_reasons.end(), o.skip_reason) == rep.skip_reasons.end())
        rep.skip_reasons.push_back(o.skip_reason);
      for (auto& [id, c] : rep.counters) ++c.inapplicable;
      continue;
    }
    if (o.sin2_regime) ++rep.sin2_regime_trials;
    for (std::size_t b = 0; b < o.bounds.size(); ++b) {
      BoundCounters& c = rep.counters[b].second;
      const BoundOutcome& bo = o.bounds[b];
      if (!bo.applicable) {
        ++c.inapplicable;
        continue;
      }
      ++c.applicable;
      c.worst_slack = std::min(c.worst_slack, bo.slack);
      if (bo.holds) {
        ++c.held;
        continue;
      }
      ++c.violated;
      if (rep.violations.size() >= kMaxStoredViolations) continue;
      Violation v;
      v.trial = i;
      v.trial_seed = trial_seed(cfg, i);
      v.digest = o.digest;
      v.report = *bo.report;
      v.kind = (v.report.bound == BoundId::conjecture_sin2 && !v.report.proven) ? ViolationKind::conjecture
                                                                                : ViolationKind::theorem;
      v.margin = -v.report.verdict.min_slack() / v.report.verdict.tolerance_used;
      rep.violations.push_back(std::move(v));
    }
  }

  for (auto& v : rep.violations) v.replay_confirmed = replay_violation(cfg, v);

  const CheckOptions opts = cfg.check_options();
  for (std::size_t i = 0; i < rep.violations.size() && rep.shrunk.size() < cfg.max_shrink; ++i) {
    const Violation& v = rep.violations[i];
    if (v.kind != ViolationKind::conjecture) continue;
    try {
      auto gen = generate_instance(cfg, v.trial_seed);
      if (!gen.instance) continue;
      rep.shrunk.push_back({i, shrink(gen.instance->a, gen.instance->x, gen.instance->y, v.report.bound, opts)});
    } catch (const Error&) {
      // The finding stays reported unshrunk.
    }
  }

  rep.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

bool replay_violation(const FuzzConfig& cfg, const Violation& v) {
  try {
    auto gen = generate_instance(cfg, v.trial_seed);
    if (!gen.instance || gen.instance->digest != v.digest) return false;
    const auto r = check_bound(v.report.bound, gen.instance->a, gen.instance->x, gen.instance->y,
                               cfg.check_options());
    return r.violated();
  } catch (const Error&) {
    return false;
  }
}

std::size_t persist_findings(const CampaignReport& report, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  auto write_json = [](const std::filesystem::path& p, const Json& j) {
    std::ofstream out(p);
    if (!out) throw ContractError("cannot write " + p.string());
    out << j.dump(2) << '\n';
  };
  std::size_t written = 0;
  for (std::size_t i = 0; i < report.violations.size(); ++i) {
    const Violation& v = report.violations[i];
    auto gen = generate_instance(report.config, v.trial_seed);
    if (!gen.instance) continue;
    const std::string stem = "finding-" + std::to_string(i) + "-" + std::string(to_string(v.report.bound));
    write_matrix_file(dir / (stem + "-A.txt"), gen.instance->a.matrix());
    write_matrix_file(dir / (stem + "-X.txt"), gen.instance->x.matrix());
    write_matrix_file(dir / (stem + "-Y.txt"), gen.instance->y.matrix());
    Json j;
    j["trial"] = v.trial;
    j["seed"] = v.trial_seed;
    j["seed_hex"] = seed_hex(v.trial_seed);
    j["digest"] = v.digest;
    j["kind"] = std::string(to_string(v.kind));
    j["margin"] = v.margin;
    j["config"] = to_json(report.config);
    j["rng_algorithm"] = report.rng_algorithm;
    j["report"] = to_json(v.report);
    write_json(dir / (stem + ".json"), j);
    ++written;
  }
  for (const auto& s : report.shrunk) {
    const std::string stem = "shrunk-" + std::to_string(s.violation);
    write_matrix_file(dir / (stem + "-A.txt"), s.result.a.matrix());
    write_matrix_file(dir / (stem + "-X.txt"), s.result.x.matrix());
    write_matrix_file(dir / (stem + "-Y.txt"), s.result.y.matrix());
    Json j;
    j["violation"] = s.violation;
    j["steps"] = s.result.steps;
    j["report"] = to_json(s.result.report);
    write_json(dir / (stem + ".json"), j);
    ++written;
  }
  return written;
}

}  // namespace ritzmaj
