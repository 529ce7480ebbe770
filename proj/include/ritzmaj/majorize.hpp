#pragma once

// Weak and strong majorization of real vectors.
//
// Vectors of different lengths are compared after padding the shorter one
// with zeros at the end. A prefix comparison fails only when its slack is
// below −tol·max(1, largest |prefix sum| seen in either vector), which keeps
// the predicates scale free for both tiny and large spectra.

#include <cstddef>
#include <span>

#include "ritzmaj/numkern.hpp"

namespace ritzmaj {

enum class MajorizationMode { weak, strong };

struct MajorizationVerdict {
  bool holds = true;
  MajorizationMode mode = MajorizationMode::weak;
  /// Σᵢ₌₁ᵏ y↓ᵢ − Σᵢ₌₁ᵏ x↓ᵢ for every prefix length k.
  RealVector prefix_slacks;
  /// Σx − Σy; part of the verdict only in strong mode.
  double total_gap = 0.0;
  /// Prefix length (1-based) with the smallest slack; 0 for empty vectors.
  std::size_t worst_prefix = 0;
  /// max(1, largest |prefix sum| of either vector).
  double scale = 1.0;
  /// Absolute tolerance that was actually applied: tol·scale.
  double tolerance_used = 0.0;

  double min_slack() const;
};

RealVector sort_desc(RealVector x);
RealVector sort_asc(RealVector x);
RealVector abs_vec(RealVector x);
/// `x` followed by zeros up to `len`; ContractError if `len < x.size()`.
RealVector pad_to(RealVector x, std::size_t len);

/// Elementwise sum / product after zero padding to the common length.
RealVector add_padded(std::span<const double> x, std::span<const double> y);
RealVector multiply_padded(std::span<const double> x, std::span<const double> y);

/// x ≺w y. Throws InputDomainError on non-finite entries.
MajorizationVerdict weakly_majorized(std::span<const double> x, std::span<const double> y, double tol);
/// x ≺ y: weak majorization plus equal totals.
MajorizationVerdict strongly_majorized(std::span<const double> x, std::span<const double> y, double tol);

/// (Σ xᵢᵖ)^{1/p} ≤ (Σ yᵢᵖ)^{1/p} for nonnegative x, y, accepted when the left
/// side exceeds the right by at most tol·max(1, right side).
bool pnorm_consequence(std::span<const double> x, std::span<const double> y, double p, double tol);

}  // namespace ritzmaj
