#pragma once

// Seeded fuzz campaigns over random (A, X, Y) instances, counterexample
// shrinking, reproductions of the two hand-built examples, and property
// suites for the classical majorization facts.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ritzmaj/bounds.hpp"

namespace ritzmaj {

enum class SpectrumModel { uniform_interval, clustered, integer, two_point, mixed };
enum class AngleModel { uniform, graded_powers, near_zero, mixed_with_right_angles, mixed };
enum class InvarianceMode { invariant_x, none, contiguous_extreme, half_spectrum, general_invariant };

std::string_view to_string(SpectrumModel m);
std::string_view to_string(AngleModel m);
std::string_view to_string(InvarianceMode m);
std::optional<SpectrumModel> spectrum_model_from_string(std::string_view s);
std::optional<AngleModel> angle_model_from_string(std::string_view s);
std::optional<InvarianceMode> invariance_mode_from_string(std::string_view s);

struct FuzzConfig {
  std::size_t trials = 1000;
  std::size_t n_min = 2;
  std::size_t n_max = 12;
  std::size_t k_min = 1;
  std::size_t k_max = 6;
  SpectrumModel spectrum_model = SpectrumModel::mixed;
  AngleModel angle_model = AngleModel::mixed;
  InvarianceMode invariance_mode = InvarianceMode::invariant_x;
  std::uint64_t seed = 0;
  double tolerance = 1e-9;
  double inv_tolerance = 1e-8;
  std::vector<BoundId> bounds{kAllBounds.begin(), kAllBounds.end()};
  unsigned jobs = 1;
  /// At most this many conjecture findings are shrunk.
  std::size_t max_shrink = 5;
  /// Test hook: scales every right-hand side.
  double rhs_scale = 1.0;

  CheckOptions check_options() const { return {tolerance, inv_tolerance, rhs_scale}; }
};

/// Throws ContractError describing the first violated constraint.
void validate(const FuzzConfig& cfg);

/// Seed of trial `index` within a campaign.
std::uint64_t trial_seed(const FuzzConfig& cfg, std::size_t index);

struct Instance {
  HermitianMatrix a;
  OrthonormalBasis x;
  OrthonormalBasis y;
  std::uint64_t trial_seed = 0;
  RealVector spectrum;               ///< as sampled, unsorted
  std::vector<std::size_t> indices;  ///< eigenvalue positions spanned by X; empty in mode none
  AngleVector target_angles;
  SpectrumModel spectrum_model = SpectrumModel::uniform_interval;
  AngleModel angle_model = AngleModel::uniform;
  std::string digest;                ///< FNV-1a of A, X and Y
};

struct GenerationResult {
  std::optional<Instance> instance;
  std::string skip_reason;  ///< set when no instance could be built
};

/// Deterministic in (cfg, trial_seed).
GenerationResult generate_instance(const FuzzConfig& cfg, std::uint64_t trial_seed);

/// Hex FNV-1a digest over the entries of A, X and Y.
std::string instance_digest(const HermitianMatrix& a, const OrthonormalBasis& x, const OrthonormalBasis& y);

struct BoundCounters {
  std::size_t applicable = 0;
  std::size_t held = 0;
  std::size_t violated = 0;
  std::size_t inapplicable = 0;
  /// Smallest min-prefix slack over applicable trials, relative to the
  /// tolerance scale in use (slack / max(1, largest prefix sum)).
  double worst_slack = std::numeric_limits<double>::infinity();
};

enum class ViolationKind { theorem, conjecture };
std::string_view to_string(ViolationKind k);

struct Violation {
  std::size_t trial = 0;
  std::uint64_t trial_seed = 0;
  std::string digest;
  ViolationKind kind = ViolationKind::theorem;
  /// Regenerating the instance from its seed reproduced the violation.
  bool replay_confirmed = false;
  /// −(min slack) / tolerance_used; values near 1 are tolerance artifacts.
  double margin = 0.0;
  BoundCheckReport report;
};

struct ShrinkResult {
  HermitianMatrix a;
  OrthonormalBasis x;
  OrthonormalBasis y;
  BoundCheckReport report;
  std::size_t steps = 0;  ///< accepted reduction moves; 0 means the input was returned unchanged
};

struct ShrunkFinding {
  std::size_t violation = 0;  ///< index into CampaignReport::violations
  ShrinkResult result;
};

struct CampaignReport {
  FuzzConfig config;
  std::string rng_algorithm;
  std::vector<std::pair<BoundId, BoundCounters>> counters;  ///< in config.bounds order
  std::vector<Violation> violations;
  std::vector<ShrunkFinding> shrunk;
  std::size_t skipped = 0;
  std::vector<std::string> skip_reasons;  ///< distinct reasons, first occurrence order
  std::size_t sin2_regime_trials = 0;     ///< trials whose invariant side is contiguous or half-spectrum
  double wall_time_s = 0.0;

  std::size_t theorem_violations() const;
  std::size_t conjecture_findings() const;
  const BoundCounters* find(BoundId b) const;
};

CampaignReport run_campaign(const FuzzConfig& cfg);

/// Regenerates the instance of `v` and checks that it still violates.
bool replay_violation(const FuzzConfig& cfg, const Violation& v);

/// Writes A/X/Y text files and report JSON for every violation (and shrunk
/// instance) under `dir`. Returns the number of findings written.
std::size_t persist_findings(const CampaignReport& report, const std::filesystem::path& dir);

/// Greedy reduction of a violating instance: drop dimensions of the ambient
/// space, then of the subspaces, then snap the spectrum to integers (or small
/// dyadic fractions) and the cosines to multiples of 1/8, keeping each move
/// only while the violation persists. Throws ContractError if the input does
/// not violate `bound`.
ShrinkResult shrink(const HermitianMatrix& a, const OrthonormalBasis& x, const OrthonormalBasis& y, BoundId bound,
                    const CheckOptions& opts = {});

// ---------------------------------------------------------------- reproductions

/// Equality case: A = diag(I, −I) of order 2m, X = [I; 0], Y = [C; √(I − C²)].
/// Throws ReproductionFailure unless lhs = 2 sin² θ and the sin² bound holds
/// with equality (every prefix slack within 1e-10).
BoundCheckReport repro_sharp(std::size_t m, const AngleVector& angles);

struct IntermediateRecord {
  AngleVector angles;
  double spread = 0.0;
  CMatrix xax;
  CMatrix yay;
  CMatrix c_a11_c;
  CMatrix sh_a22_s;
  RealVector lhs;
  BoundCheckReport conjecture;
  RealVector majorant;            ///< the intermediate vector a
  RealVector majorant_abs_sorted; ///< |a|↓
  RealVector bound_rhs;           ///< spr·sin² θ
  MajorizationVerdict majorant_verdict;
  double cs_identity_error = 0.0;
};

/// The 4×4 example where the Lidskii-based intermediate vector is not
/// dominated by spr·sin² θ although the bound itself holds. Throws
/// ReproductionFailure if any expected value is not matched.
IntermediateRecord repro_intermediate_counterexample();

// -------------------------------------------------------------- property suites

struct PropertyResult {
  std::string name;
  std::size_t trials = 0;
  std::size_t failures = 0;
  double worst_slack = std::numeric_limits<double>::infinity();
};

struct SuiteReport {
  std::uint64_t seed = 0;
  std::vector<PropertyResult> results;
  bool all_passed() const;
};

/// Lidskii, the singular-value sum/product/norm inequalities and the
/// elementary majorization facts on seeded random inputs of order ≤ max_n.
SuiteReport property_suites(std::uint64_t seed, std::size_t trials, double tol = 1e-9, std::size_t max_n = 8);

}  // namespace ritzmaj
