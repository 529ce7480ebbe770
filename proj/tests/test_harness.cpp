#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>

#include "oracles.hpp"
#include "ritzmaj/errors.hpp"
#include "ritzmaj/matrix_io.hpp"
#include "ritzmaj/report_json.hpp"

using namespace ritzmaj;

namespace {

constexpr double kHalfPi = std::numbers::pi / 2;

FuzzConfig small_config(InvarianceMode mode, std::size_t trials = 100) {
  FuzzConfig cfg;
  cfg.trials = trials;
  cfg.seed = 12345;
  cfg.invariance_mode = mode;
  return cfg;
}

std::filesystem::path temp_dir(const std::string& name) {
  auto p = std::filesystem::temp_directory_path() / ("ritzmaj-test-" + name);
  std::filesystem::remove_all(p);
  return p;
}

}  // namespace

TEST_SUITE("harness") {
  TEST_CASE("model names round-trip") {
    for (auto m : {SpectrumModel::uniform_interval, SpectrumModel::clustered, SpectrumModel::integer,
                   SpectrumModel::two_point, SpectrumModel::mixed})
      CHECK(spectrum_model_from_string(to_string(m)) == m);
    for (auto m : {AngleModel::uniform, AngleModel::graded_powers, AngleModel::near_zero,
                   AngleModel::mixed_with_right_angles, AngleModel::mixed})
      CHECK(angle_model_from_string(to_string(m)) == m);
    for (auto m : {InvarianceMode::invariant_x, InvarianceMode::none, InvarianceMode::contiguous_extreme,
                   InvarianceMode::half_spectrum, InvarianceMode::general_invariant})
      CHECK(invariance_mode_from_string(to_string(m)) == m);
  }

  TEST_CASE("config validation") {
    FuzzConfig cfg;
    CHECK_NOTHROW(validate(cfg));
    cfg.n_min = 5;
    cfg.n_max = 4;
    CHECK_THROWS_AS(validate(cfg), ContractError);
    cfg = {};
    cfg.k_min = 0;
    CHECK_THROWS_AS(validate(cfg), ContractError);
    cfg = {};
    cfg.tolerance = -1;
    CHECK_THROWS_AS(validate(cfg), ContractError);
    cfg = {};
    cfg.bounds.clear();
    CHECK_THROWS_AS(validate(cfg), ContractError);
    cfg = {};
    cfg.n_max = 100000;
    CHECK_THROWS_AS(validate(cfg), CapacityError);
    cfg = {};
    cfg.n_max = 3;
    cfg.k_min = 3;
    cfg.k_max = 3;
    CHECK_THROWS_AS(validate(cfg), ContractError);
  }

  TEST_CASE("generation is deterministic and respects the mode") {
    const auto cfg = small_config(InvarianceMode::invariant_x);
    for (std::size_t i = 0; i < 50; ++i) {
      const auto s = trial_seed(cfg, i);
      const auto g1 = generate_instance(cfg, s), g2 = generate_instance(cfg, s);
      REQUIRE(g1.instance);
      CHECK(g1.instance->digest == g2.instance->digest);
      CHECK(g1.instance->a.matrix() == g2.instance->a.matrix());
      const auto& in = *g1.instance;
      CHECK(in.x.dim() == in.y.dim());
      CHECK(in.x.dim() < in.a.order());
      CHECK(classify_invariant(in.a, in.x, cfg.inv_tolerance).invariant());
      CHECK(oracle::max_abs_diff(principal_angles(in.x, in.y).values(), in.target_angles.values()) <= 1e-9);
      CHECK(oracle::max_abs_diff(eigvalsh(in.a), sort_desc(in.spectrum)) <= 1e-10 * std::max(1.0, spread_of(eigvalsh(in.a))) + 1e-12);
    }
  }

  TEST_CASE("mode none is almost surely not invariant") {
    const auto cfg = small_config(InvarianceMode::none);
    for (std::size_t i = 0; i < 50; ++i) {
      const auto g = generate_instance(cfg, trial_seed(cfg, i));
      REQUIRE(g.instance);
      CHECK_FALSE(classify_invariant(g.instance->a, g.instance->x, cfg.inv_tolerance).invariant());
    }
  }

  TEST_CASE("modes produce their regimes") {
    for (auto mode : {InvarianceMode::contiguous_extreme, InvarianceMode::half_spectrum,
                      InvarianceMode::general_invariant}) {
      const auto cfg = small_config(mode);
      for (std::size_t i = 0; i < 40; ++i) {
        const auto g = generate_instance(cfg, trial_seed(cfg, i));
        if (!g.instance) {
          CHECK_FALSE(g.skip_reason.empty());
          continue;
        }
        const auto c = classify_invariant(g.instance->a, g.instance->x, cfg.inv_tolerance);
        if (mode == InvarianceMode::contiguous_extreme) CHECK(c.contiguous());
        if (mode == InvarianceMode::half_spectrum) CHECK(c.sin2_regime());
        if (mode == InvarianceMode::general_invariant) CHECK(c.tag == InvariantTag::general);
      }
    }
  }

  TEST_CASE("two-point spectra yield the ±1 family") {
    auto cfg = small_config(InvarianceMode::contiguous_extreme);
    cfg.spectrum_model = SpectrumModel::two_point;
    for (std::size_t i = 0; i < 20; ++i) {
      const auto g = generate_instance(cfg, trial_seed(cfg, i));
      REQUIRE(g.instance);
      CHECK(std::abs(spread(g.instance->a) - 2.0) <= 1e-12);
      for (double v : g.instance->spectrum) CHECK(std::abs(v) == 1.0);
      CHECK(check_bound(BoundId::conjecture_sin2, g.instance->a, g.instance->x, g.instance->y).holds());
    }
  }

  TEST_CASE("campaigns find no theorem violations") {
    const auto r = run_campaign(small_config(InvarianceMode::invariant_x));
    CHECK(r.find(BoundId::thm_ecos)->violated == 0);
    CHECK(r.find(BoundId::thm_ecos)->applicable == 100);
    CHECK(r.theorem_violations() == 0);

    const auto c = run_campaign(small_config(InvarianceMode::contiguous_extreme));
    CHECK(c.find(BoundId::conjecture_sin2)->violated == 0);
    CHECK(c.sin2_regime_trials == 100);
  }

  TEST_CASE("campaigns are deterministic across thread counts") {
    auto cfg = small_config(InvarianceMode::invariant_x, 120);
    cfg.rhs_scale = 0.9;  // produce some violations so their order is exercised too
    const auto a = to_json(run_campaign(cfg), false).dump();
    cfg.jobs = 3;
    const auto b = to_json(run_campaign(cfg), false).dump();
    CHECK(a == b);
  }

  TEST_CASE("single trial replays bit for bit") {
    auto cfg = small_config(InvarianceMode::invariant_x, 1);
    const auto a = to_json(run_campaign(cfg), false).dump();
    const auto b = to_json(run_campaign(cfg), false).dump();
    CHECK(a == b);
  }

  TEST_CASE("weakened bounds are caught, replayed and persisted") {
    auto cfg = small_config(InvarianceMode::invariant_x, 60);
    cfg.rhs_scale = 0.4;
    cfg.bounds = {BoundId::sin_general};
    const auto r = run_campaign(cfg);
    REQUIRE(r.find(BoundId::sin_general)->violated > 0);
    CHECK(r.theorem_violations() == r.violations.size());
    for (const auto& v : r.violations) {
      CHECK(v.replay_confirmed);
      CHECK(v.margin > 1.0);
    }
    const auto dir = temp_dir("persist");
    const std::size_t written = persist_findings(r, dir);
    CHECK(written == r.violations.size());
    const auto& v0 = r.violations.front();
    const std::string stem = "finding-0-" + std::string(to_string(v0.report.bound));
    const auto a = HermitianMatrix::from_full(read_matrix_file(dir / (stem + "-A.txt")).matrix());
    const OrthonormalBasis x(read_matrix_file(dir / (stem + "-X.txt")).matrix());
    const OrthonormalBasis y(read_matrix_file(dir / (stem + "-Y.txt")).matrix());
    CHECK(check_bound(v0.report.bound, a, x, y, cfg.check_options()).violated());
    std::filesystem::remove_all(dir);
  }

  TEST_CASE("shrinking a falsified bound") {
    auto cfg = small_config(InvarianceMode::invariant_x, 40);
    cfg.rhs_scale = 0.4;
    cfg.bounds = {BoundId::sin_general};
    cfg.n_min = 6;
    const auto r = run_campaign(cfg);
    REQUIRE_FALSE(r.violations.empty());
    int checked = 0;
    for (const auto& v : r.violations) {
      if (checked == 5) break;
      const auto g = generate_instance(cfg, v.trial_seed);
      REQUIRE(g.instance);
      const auto s = shrink(g.instance->a, g.instance->x, g.instance->y, BoundId::sin_general, cfg.check_options());
      CHECK(s.steps > 0);
      CHECK(s.a.order() <= 4);
      CHECK(check_bound(BoundId::sin_general, s.a, s.x, s.y, cfg.check_options()).violated());
      ++checked;
    }
  }

  TEST_CASE("a minimal instance is returned unchanged") {
    const auto a = HermitianMatrix::diagonal(RealVector{1, -1});
    CMatrix xm(2, 1), ym(2, 1);
    xm << 1, 0;
    ym << 0.5, std::sqrt(0.75);
    const OrthonormalBasis x(xm), y(ym);
    const CheckOptions opts{1e-9, 1e-8, 0.4};
    const auto s = shrink(a, x, y, BoundId::sin_general, opts);
    CHECK(s.steps == 0);
    CHECK(s.a.matrix() == a.matrix());
    CHECK(s.y.matrix() == y.matrix());
    CHECK(s.report.violated());
    CHECK_THROWS_AS(shrink(a, x, x, BoundId::sin_general, opts), ContractError);
  }

  TEST_CASE("sharp reproduction") {
    const auto r = repro_sharp(2, AngleVector(RealVector{std::numbers::pi / 3, std::numbers::pi / 6}));
    CHECK(oracle::max_abs_diff(r.lhs, RealVector{1.5, 0.5}) <= 1e-12);
    CHECK(oracle::max_abs_diff(r.rhs, RealVector{1.5, 0.5}) <= 1e-12);
    CHECK(r.spread == 2.0);
    const auto z = repro_sharp(3, AngleVector(RealVector{0, 0, 0}));
    for (double v : z.lhs) CHECK(v == 0.0);
    for (double v : z.rhs) CHECK(v == 0.0);
    CHECK_THROWS_AS(repro_sharp(2, AngleVector(RealVector{0.1})), ContractError);
  }

  TEST_CASE("intermediate reproduction") {
    const auto rec = repro_intermediate_counterexample();
    CHECK(rec.spread == 2.0);
    CHECK(std::abs(rec.angles[0] - kHalfPi) <= 1e-12);
    CHECK(rec.majorant_abs_sorted == RealVector{2, 1});
    CHECK_FALSE(rec.majorant_verdict.holds);
    CHECK(rec.majorant_verdict.worst_prefix == 2);
    CHECK(rec.conjecture.holds());
    CHECK(rec.cs_identity_error <= 1e-12);
  }

  TEST_CASE("property suites pass") {
    const auto rep = property_suites(77, 200);
    CHECK(rep.results.size() == 8);
    for (const auto& r : rep.results) CHECK_MESSAGE(r.failures == 0, r.name);
    CHECK(rep.all_passed());
  }

  TEST_CASE("Lidskii with A = B and a 5x3 by 3x4 product") {
    const auto a = random_hermitian(5, 1);
    const auto l = eigvalsh(a);
    RealVector diff(l.size(), 0.0);
    CHECK(strongly_majorized(diff, eigvalsh(HermitianMatrix::from_full(a.matrix() - a.matrix())), 1e-12).holds);
    const CMatrix p = random_complex(5, 3, 2), q = random_complex(3, 4, 3);
    const auto rhs = multiply_padded(singular_values(p), singular_values(q));
    const auto lhs = singular_values(p * q);
    CHECK(lhs.size() == 4);
    CHECK(rhs.size() == 3);
    CHECK(weakly_majorized(lhs, rhs, 1e-9).holds);
    CHECK(lhs[3] <= 1e-12 * lhs[0]);
  }
}

TEST_SUITE("json") {
  TEST_CASE("bound report fields") {
    const auto a = HermitianMatrix::diagonal(RealVector{1, 0, -1});
    const auto x = OrthonormalBasis::coordinate(3, std::vector<Index>{0});
    CMatrix ym(3, 1);
    ym << 0, 1, 0;
    const OrthonormalBasis y(ym);
    const auto reports = check_all(a, x, y);
    for (const auto& r : reports) {
      const Json j = to_json(r);
      for (const char* key : {"bound", "applicable", "reason", "holds", "lhs", "rhs", "prefix_slacks", "worst_prefix",
                              "angles_rad", "spread", "invariant_side", "tolerance"})
        CHECK_MESSAGE(j.contains(key), key);
      if (!r.applicable) CHECK(j["holds"].is_null());
    }
    const Json tan2 = to_json(reports.back());
    CHECK(tan2["bound"] == "TAN2");
    CHECK(tan2["rhs"][0].is_null());
    CHECK(tan2["unbounded_rhs"] == true);
    CHECK(tan2["invariant_side"] == "both");
  }

  TEST_CASE("campaign report layout") {
    auto cfg = small_config(InvarianceMode::invariant_x, 20);
    cfg.rhs_scale = 0.5;
    const auto r = run_campaign(cfg);
    const Json j = to_json(r);
    CHECK(j["config"]["trials"] == 20);
    CHECK(j["rng_algorithm"] == "mt19937_64/u53/box-muller/v1");
    CHECK(j["counters"].size() == kAllBounds.size());
    CHECK(j.contains("wall_time_s"));
    CHECK_FALSE(to_json(r, false).contains("wall_time_s"));
    REQUIRE(!j["violations"].empty());
    const auto& v = j["violations"][0];
    CHECK(v["seed"].get<std::uint64_t>() == trial_seed(cfg, v["trial"].get<std::size_t>()));
    CHECK(v["seed_hex"].get<std::string>().size() == 18);
    const std::string csv = campaign_csv(r);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == static_cast<long>(kAllBounds.size() + 1));
  }

  TEST_CASE("matrix encoding") {
    CMatrix m(1, 2);
    m << Complex(1, 2), 3;
    const Json j = matrix_to_json(m);
    CHECK(j["re"][0][1] == 3.0);
    CHECK(j["im"][0][0] == 2.0);
    CHECK_FALSE(matrix_to_json(m.real().cast<Complex>()).contains("im"));
  }
}
