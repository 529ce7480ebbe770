#include "ritzmaj/subspace.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <string>

#include "ritzmaj/errors.hpp"

namespace ritzmaj {

namespace {

constexpr double kHalfPi = std::numbers::pi / 2.0;

void require_compatible(const OrthonormalBasis& x, const OrthonormalBasis& y) {
  if (x.ambient_dim() != y.ambient_dim() || x.dim() != y.dim())
    throw ContractError("subspaces must share ambient dimension and dimension (got " +
                        std::to_string(x.ambient_dim()) + "x" + std::to_string(x.dim()) + " and " +
                        std::to_string(y.ambient_dim()) + "x" + std::to_string(y.dim()) + ")");
}

// Component of y orthogonal to span(x), projected twice.
CMatrix orthogonal_residual(const CMatrix& x, const CMatrix& y) {
  CMatrix r = y - x * (x.adjoint() * y);
  r -= x * (x.adjoint() * r);
  return r;
}

}  // namespace

AngleVector::AngleVector(RealVector angles) : angles_(std::move(angles)) {
  for (std::size_t i = 0; i < angles_.size(); ++i) {
    const double a = angles_[i];
    if (!(a >= 0.0 && a <= kHalfPi)) throw ContractError("angle " + std::to_string(a) + " outside [0, pi/2]");
    if (i > 0 && a > angles_[i - 1]) throw ContractError("angles must be nonincreasing");
  }
}

AngleVector AngleVector::from_unsorted(RealVector angles) {
  std::sort(angles.begin(), angles.end(), std::greater<>());
  return AngleVector(std::move(angles));
}

RealVector AngleVector::sines() const {
  RealVector s(angles_.size());
  std::transform(angles_.begin(), angles_.end(), s.begin(), [](double a) { return std::sin(a); });
  return s;
}

RealVector AngleVector::cosines() const {
  RealVector c(angles_.size());
  std::transform(angles_.begin(), angles_.end(), c.begin(), [](double a) { return std::cos(a); });
  return c;
}

double AlignedPair::cs_identity_error() const {
  const Index k = static_cast<Index>(c_diag.size());
  CMatrix g = CMatrix::Zero(k, k);
  if (s_block.rows() > 0) g = s_block.adjoint() * s_block;
  for (Index i = 0; i < k; ++i) g(i, i) += c_diag[static_cast<std::size_t>(i)] * c_diag[static_cast<std::size_t>(i)];
  g -= CMatrix::Identity(k, k);
  return g.cwiseAbs().maxCoeff();
}

AngleVector principal_angles(const OrthonormalBasis& x, const OrthonormalBasis& y) {
  require_compatible(x, y);
  const std::size_t k = static_cast<std::size_t>(x.dim());
  const RealVector cosines = singular_values(x.matrix().adjoint() * y.matrix());  // descending
  const RealVector sines = singular_values(orthogonal_residual(x.matrix(), y.matrix()));  // descending
  // Pair the i-th largest cosine (i-th smallest angle) with the i-th smallest sine.
  RealVector angles(k);
  for (std::size_t i = 0; i < k; ++i) {
    const double c = std::clamp(cosines[i], 0.0, 1.0);
    if (c > std::numbers::sqrt2 / 2.0) {
      angles[i] = std::asin(std::clamp(sines[k - 1 - i], 0.0, 1.0));
    } else {
      angles[i] = std::acos(c);
    }
  }
  // Merging the two paths can leave a tiny inversion at the threshold.
  return AngleVector::from_unsorted(std::move(angles));
}

AngleVector principal_angles_cosine_only(const OrthonormalBasis& x, const OrthonormalBasis& y) {
  require_compatible(x, y);
  RealVector angles = singular_values(x.matrix().adjoint() * y.matrix());
  for (double& a : angles) a = std::acos(std::clamp(a, 0.0, 1.0));
  return AngleVector::from_unsorted(std::move(angles));
}

AlignedPair align_bases(const OrthonormalBasis& x, const OrthonormalBasis& y) {
  require_compatible(x, y);
  const Index n = x.ambient_dim();
  const Index k = x.dim();
  const auto dec = svd(DenseMatrix(x.matrix().adjoint() * y.matrix()));
  // svd returns descending singular values; reverse for increasing cosines.
  const CMatrix u = dec.u.matrix().rowwise().reverse();
  const CMatrix v = dec.v.matrix().rowwise().reverse();
  CMatrix xa = x.matrix() * u;
  CMatrix ya = y.matrix() * v;
  RealVector c(static_cast<std::size_t>(k));
  for (Index i = 0; i < k; ++i) c[static_cast<std::size_t>(i)] = std::clamp(dec.s[static_cast<std::size_t>(k - 1 - i)], 0.0, 1.0);

  CMatrix full(n, n);
  full.leftCols(k) = xa;
  std::vector<bool> known(static_cast<std::size_t>(n), false);
  std::fill(known.begin(), known.begin() + k, true);
  complete_orthonormal(full, known);
  CMatrix xp = full.rightCols(n - k);
  CMatrix s = xp.adjoint() * ya;

  return AlignedPair{OrthonormalBasis(std::move(xa)), OrthonormalBasis(std::move(ya)), std::move(xp), std::move(c),
                     std::move(s)};
}

double gap(const OrthonormalBasis& x, const OrthonormalBasis& y) {
  const AngleVector a = principal_angles(x, y);
  return std::sin(a[0]);
}

RealVector sines_padded(const AlignedPair& pair) {
  const std::size_t k = pair.c_diag.size();
  RealVector s = pair.s_block.rows() > 0 ? singular_values(pair.s_block) : RealVector{};
  for (double& v : s) v = std::min(v, 1.0);
  s.resize(k, 0.0);
  return s;
}

OrthonormalBasis perturb_subspace_along(const OrthonormalBasis& x, const AngleVector& target,
                                        const CMatrix& directions) {
  const Index k = x.dim();
  if (static_cast<Index>(target.size()) != k)
    throw ContractError("perturb_subspace: need one target angle per basis column");
  const auto nonzero = static_cast<Index>(std::count_if(target.values().begin(), target.values().end(),
                                                         [](double a) { return a > 0.0; }));
  if (directions.cols() < nonzero || directions.rows() != x.ambient_dim())
    throw ContractError("perturb_subspace: not enough complement directions");
  CMatrix y = x.matrix();
  Index d = 0;
  for (Index i = 0; i < k; ++i) {
    const double theta = target[static_cast<std::size_t>(i)];
    if (theta == 0.0) continue;
    y.col(i) = x.matrix().col(i) * std::cos(theta) + directions.col(d++) * std::sin(theta);
  }
  return OrthonormalBasis(std::move(y));
}

OrthonormalBasis perturb_subspace(const OrthonormalBasis& x, const AngleVector& target, std::uint64_t seed) {
  const Index n = x.ambient_dim();
  const Index k = x.dim();
  const auto nonzero = static_cast<Index>(std::count_if(target.values().begin(), target.values().end(),
                                                         [](double a) { return a > 0.0; }));
  if (nonzero > n - k)
    throw CapacityError("perturb_subspace: " + std::to_string(nonzero) + " nonzero angles but only " +
                        std::to_string(n - k) + " complement directions");
  if (nonzero == 0) return perturb_subspace_along(x, target, CMatrix(n, 0));
  // Random directions in span(x)⊥, orthonormalized against x and each other.
  const CMatrix g = orthogonal_residual(x.matrix(), random_complex(n, nonzero, seed));
  CMatrix z(n, nonzero);
  for (Index j = 0; j < nonzero; ++j) {
    CVector v = g.col(j);
    for (int pass = 0; pass < 2; ++pass) {
      v -= x.matrix() * (x.matrix().adjoint() * v);
      for (Index i = 0; i < j; ++i) v -= z.col(i) * z.col(i).dot(v);
    }
    z.col(j) = v / v.norm();
  }
  return perturb_subspace_along(x, target, z);
}

}  // namespace ritzmaj
