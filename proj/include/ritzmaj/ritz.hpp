#pragma once

// Ritz values, spectral spread, invariant subspaces and their classification
// into the regimes where the sin² bound is known to hold.

#include <cstddef>
#include <span>
#include <string_view>

#include "ritzmaj/numkern.hpp"
#include "ritzmaj/subspace.hpp"

namespace ritzmaj {

/// λ(XᴴAX), nonincreasing.
RealVector ritz_values(const HermitianMatrix& a, const OrthonormalBasis& x);

/// λ₁(A) − λₙ(A).
double spread(const HermitianMatrix& a);
/// Spread of an already computed nonincreasing spectrum.
double spread_of(std::span<const double> spectrum);

/// Span of the eigenvectors at the given 0-based positions of the
/// nonincreasing spectrum.
OrthonormalBasis invariant_subspace(const HermitianMatrix& a, std::span<const std::size_t> indices);
OrthonormalBasis invariant_subspace(const EigenDecomposition& eig, std::span<const std::size_t> indices);

/// ‖AX − X(XᴴAX)‖₂.
double invariance_residual(const HermitianMatrix& a, const OrthonormalBasis& x);

enum class InvariantTag { contiguous_top, contiguous_bottom, half_top, half_bottom, general, not_invariant };

std::string_view to_string(InvariantTag tag);

struct InvariantClass {
  InvariantTag tag = InvariantTag::not_invariant;
  double residual = 0.0;
  bool contiguous_top = false;
  bool contiguous_bottom = false;
  bool half_top = false;
  bool half_bottom = false;

  bool invariant() const { return tag != InvariantTag::not_invariant; }
  bool contiguous() const { return contiguous_top || contiguous_bottom; }
  /// Ritz values of an invariant X cover a contiguous extreme block or lie
  /// in one half of the spectrum.
  bool sin2_regime() const { return invariant() && (contiguous() || half_top || half_bottom); }
};

/// Invariant when the residual is at most tol·spr(A) plus a roundoff floor of
/// order n·ε·‖A‖. Contiguity compares the sorted Ritz values with the leading
/// or trailing eigenvalues within the same threshold; the half-spectrum tests
/// treat the midpoint as inclusive with the same buffer.
InvariantClass classify_invariant(const HermitianMatrix& a, const OrthonormalBasis& x, double tol);
InvariantClass classify_invariant(const HermitianMatrix& a, std::span<const double> spectrum,
                                  const OrthonormalBasis& x, double tol);

/// ‖YᴴAY − (C·A₁₁·C + Sᴴ·A₂₂·S)‖₂ for an aligned pair whose X side is
/// A-invariant. Throws ContractError when it is not (residual > tol·spr(A)).
double block_ritz_identity(const HermitianMatrix& a, const AlignedPair& pair, double tol = Tolerances{}.inv);

}  // namespace ritzmaj
