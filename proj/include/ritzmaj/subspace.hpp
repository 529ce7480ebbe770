#pragma once

// Geometry of two subspaces of equal dimension: principal angles, gap and the
// canonical alignment that turns XᴴY into a real nondecreasing diagonal.

#include <cstdint>
#include <span>
#include <utility>

#include "ritzmaj/numkern.hpp"

namespace ritzmaj {

/// Principal angles in radians, nonincreasing, each in [0, π/2].
class AngleVector {
 public:
  AngleVector() = default;
  /// Throws ContractError unless `angles` is nonincreasing and inside [0, π/2].
  explicit AngleVector(RealVector angles);
  /// Sorts first; range is still checked.
  static AngleVector from_unsorted(RealVector angles);

  const RealVector& values() const& { return angles_; }
  // Moves out of temporaries, so `for (x : principal_angles(..).values())` is safe.
  RealVector values() && { return std::move(angles_); }
  std::size_t size() const { return angles_.size(); }
  double operator[](std::size_t i) const { return angles_[i]; }
  bool empty() const { return angles_.empty(); }

  RealVector sines() const;
  RealVector cosines() const;

 private:
  RealVector angles_;
};

/// Bases of X and Y rotated so that x_alignedᴴ·y_aligned = diag(c_diag) with
/// c_diag nondecreasing, plus a completion x_perp of x_aligned to a unitary
/// matrix and the block s_block = x_perpᴴ·y_aligned.
struct AlignedPair {
  OrthonormalBasis x_aligned;
  OrthonormalBasis y_aligned;
  CMatrix x_perp;      ///< n × (n−k); empty when k = n
  RealVector c_diag;   ///< cosines, nondecreasing, clamped into [0, 1]
  CMatrix s_block;     ///< (n−k) × k

  /// max |C² + SᴴS − I|.
  double cs_identity_error() const;
};

/// Principal angles, nonincreasing. Angles whose cosine exceeds 1/√2 are
/// taken from the sines s((I − XXᴴ)Y), the rest from the cosines s(XᴴY).
AngleVector principal_angles(const OrthonormalBasis& x, const OrthonormalBasis& y);

/// Angles from the cosines only. Loses all accuracy below about 1e-8 rad;
/// kept for comparison with the mixed computation.
AngleVector principal_angles_cosine_only(const OrthonormalBasis& x, const OrthonormalBasis& y);

AlignedPair align_bases(const OrthonormalBasis& x, const OrthonormalBasis& y);

/// Sine of the largest principal angle.
double gap(const OrthonormalBasis& x, const OrthonormalBasis& y);

/// s(S) zero-padded to length k; equals sin θ(X, Y).
RealVector sines_padded(const AlignedPair& pair);

/// Y with θ(x, Y) = target. Targets are sorted descending and angle θᵢ is
/// assigned to column xᵢ: yᵢ = xᵢ cos θᵢ + zᵢ sin θᵢ, where {zᵢ} is a seeded
/// random orthonormal set in span(x)⊥. Throws CapacityError when more than
/// n − k targets are nonzero.
OrthonormalBasis perturb_subspace(const OrthonormalBasis& x, const AngleVector& target, std::uint64_t seed);

/// As perturb_subspace, with the complement directions supplied explicitly:
/// column j of `directions` is used for the j-th nonzero angle. `directions`
/// must be orthonormal and orthogonal to x.
OrthonormalBasis perturb_subspace_along(const OrthonormalBasis& x, const AngleVector& target,
                                        const CMatrix& directions);

}  // namespace ritzmaj
