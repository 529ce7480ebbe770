#pragma once

// Right-hand sides of the Ritz-value error bounds, the left-hand side
// |λ(XᴴAX) − λ(YᴴAY)|, and verdicts with applicability routing.

#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ritzmaj/majorize.hpp"
#include "ritzmaj/numkern.hpp"
#include "ritzmaj/ritz.hpp"
#include "ritzmaj/subspace.hpp"

namespace ritzmaj {

enum class BoundId {
  sin_1d,                 ///< spr·sin θ, one-dimensional
  sin2_1d,                ///< spr·sin² θ, one-dimensional, one side an eigenvector
  sin_general,            ///< spr·sin θ(X,Y), no invariance needed
  max_general,            ///< max error ≤ spr·gap
  max_invariant_extreme,  ///< max error ≤ spr·gap², invariant side on an extreme block
  conjecture_sin2,        ///< spr·sin² θ(X,Y), one side invariant
  thm_ecos,               ///< spr·(e − cos θ + ½ sin² θ)
  sin2_plus_sin4,         ///< spr·(sin² θ + ½ sin⁴ θ)
  three_halves_sin2,      ///< 3/2·spr·sin² θ
  tan2,                   ///< spr·tan² θ
};

inline constexpr std::array<BoundId, 10> kAllBounds = {
    BoundId::sin_1d,          BoundId::sin2_1d,          BoundId::sin_general,       BoundId::max_general,
    BoundId::max_invariant_extreme, BoundId::conjecture_sin2, BoundId::thm_ecos,   BoundId::sin2_plus_sin4,
    BoundId::three_halves_sin2, BoundId::tan2};

/// Stable serialized names, e.g. "CONJECTURE_SIN2".
std::string_view to_string(BoundId id);
std::optional<BoundId> bound_from_string(std::string_view name);

/// Every bound except CONJECTURE_SIN2 is a theorem whenever it applies.
constexpr bool is_theorem_status(BoundId id) { return id != BoundId::conjecture_sin2; }
/// MAX_GENERAL and MAX_INVARIANT_EXTREME compare only the largest error.
constexpr bool is_scalar_max(BoundId id) {
  return id == BoundId::max_general || id == BoundId::max_invariant_extreme;
}

enum class Relation { weak_majorization, scalar_max };
enum class InvariantSide { x, y, both, none };

std::string_view to_string(Relation r);
std::string_view to_string(InvariantSide s);

struct CheckOptions {
  double tol = 1e-9;      ///< relative tolerance of the majorization verdicts
  double inv_tol = 1e-8;  ///< invariance classification tolerance
  double rhs_scale = 1.0; ///< multiplies every right-hand side; 1 except in self-tests
};

/// Quantities shared by every bound for one (A, X, Y) triple.
struct InstanceAnalysis {
  Index n = 0;
  Index k = 0;
  RealVector spectrum;
  double spread = 0.0;
  AngleVector angles;
  RealVector ritz_x;
  RealVector ritz_y;
  RealVector lhs_paired;  ///< |λᵢ(XᴴAX) − λᵢ(YᴴAY)| in index order
  RealVector lhs;         ///< lhs_paired sorted descending
  InvariantClass class_x;
  InvariantClass class_y;
  InvariantSide side = InvariantSide::none;

  /// Some invariant side satisfies the contiguous or half-spectrum condition.
  bool sin2_regime() const;
  /// Some invariant side spans a contiguous extreme block.
  bool contiguous_extreme() const;
};

struct BoundCheckReport {
  BoundId bound = BoundId::sin_general;
  Relation relation = Relation::weak_majorization;
  bool applicable = false;
  std::string reason;  ///< why the bound was skipped; empty when applicable
  RealVector lhs;         ///< descending; length 1 for scalar-max bounds
  RealVector lhs_paired;  ///< index-paired differences before sorting
  RealVector rhs;         ///< descending; +inf entries only for TAN2 at θ = π/2
  MajorizationVerdict verdict;
  bool unbounded_rhs = false;
  bool proven = false;  ///< applicable and backed by a theorem for this instance
  InvariantSide invariant_side = InvariantSide::none;
  InvariantTag tag_x = InvariantTag::not_invariant;
  InvariantTag tag_y = InvariantTag::not_invariant;
  AngleVector angles;
  double spread = 0.0;
  double tolerance = 0.0;

  bool holds() const { return applicable && verdict.holds; }
  bool violated() const { return applicable && !verdict.holds; }
};

/// Sorted |λ(XᴴAX) − λ(YᴴAY)| with both Ritz vectors taken descending.
RealVector lhs_ritz_diff(const HermitianMatrix& a, const OrthonormalBasis& x, const OrthonormalBasis& y);

/// Elementwise right-hand side. Scalar-max bounds return one entry.
RealVector rhs_vector(BoundId bound, double spread, const AngleVector& angles);

InstanceAnalysis analyze(const HermitianMatrix& a, const OrthonormalBasis& x, const OrthonormalBasis& y,
                         const CheckOptions& opts = {});

BoundCheckReport check_bound(BoundId bound, const InstanceAnalysis& inst, const CheckOptions& opts = {});
BoundCheckReport check_bound(BoundId bound, const HermitianMatrix& a, const OrthonormalBasis& x,
                             const OrthonormalBasis& y, const CheckOptions& opts = {});

/// One report per bound, in kAllBounds order.
std::vector<BoundCheckReport> check_all(const HermitianMatrix& a, const OrthonormalBasis& x,
                                        const OrthonormalBasis& y, const CheckOptions& opts = {});
std::vector<BoundCheckReport> check_bounds(const InstanceAnalysis& inst, std::span<const BoundId> bounds,
                                           const CheckOptions& opts = {});

/// [λ(A₁₁) − λ(CA₁₁C)]↓ + λ(−SᴴA₂₂S) for an aligned pair with A-invariant X.
RealVector intermediate_majorant(const HermitianMatrix& a, const AlignedPair& pair,
                                 double inv_tol = Tolerances{}.inv);

}  // namespace ritzmaj
