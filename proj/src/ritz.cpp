#include "ritzmaj/ritz.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "ritzmaj/errors.hpp"

namespace ritzmaj {

namespace {

void require_conformal(const HermitianMatrix& a, const OrthonormalBasis& x) {
  if (a.order() != x.ambient_dim())
    throw ContractError("basis has " + std::to_string(x.ambient_dim()) + " rows but A has order " +
                        std::to_string(a.order()));
}

CMatrix compress(const HermitianMatrix& a, const CMatrix& x) { return x.adjoint() * a.matrix() * x; }

double invariance_threshold(const HermitianMatrix& a, double spr, double tol) {
  const double eps = std::numeric_limits<double>::epsilon();
  const double anorm = a.matrix().cwiseAbs().maxCoeff() * static_cast<double>(a.order());
  return tol * spr + 16.0 * static_cast<double>(a.order()) * eps * anorm;
}

void require_invariant(const HermitianMatrix& a, const CMatrix& x, double tol) {
  const double spr = spread(a);
  const CMatrix ax = a.matrix() * x;
  const double res = norm2(ax - x * (x.adjoint() * ax));
  if (res > invariance_threshold(a, spr, tol))
    throw ContractError("X is not A-invariant (residual " + std::to_string(res) + ")");
}

}  // namespace

RealVector ritz_values(const HermitianMatrix& a, const OrthonormalBasis& x) {
  require_conformal(a, x);
  return eigvalsh(HermitianMatrix::from_lower(compress(a, x.matrix())));
}

double spread_of(std::span<const double> spectrum) {
  if (spectrum.empty()) return 0.0;
  const auto [lo, hi] = std::minmax_element(spectrum.begin(), spectrum.end());
  return *hi - *lo;
}

double spread(const HermitianMatrix& a) { return spread_of(eigvalsh(a)); }

OrthonormalBasis invariant_subspace(const EigenDecomposition& eig, std::span<const std::size_t> indices) {
  const std::size_t n = eig.values.size();
  if (indices.empty()) throw ContractError("invariant_subspace: index set is empty");
  std::vector<bool> seen(n, false);
  CMatrix x(static_cast<Index>(n), static_cast<Index>(indices.size()));
  for (std::size_t j = 0; j < indices.size(); ++j) {
    const std::size_t i = indices[j];
    if (i >= n) throw ContractError("invariant_subspace: index " + std::to_string(i) + " out of range");
    if (seen[i]) throw ContractError("invariant_subspace: duplicate index " + std::to_string(i));
    seen[i] = true;
    x.col(static_cast<Index>(j)) = eig.vectors.matrix().col(static_cast<Index>(i));
  }
  return OrthonormalBasis(std::move(x));
}

OrthonormalBasis invariant_subspace(const HermitianMatrix& a, std::span<const std::size_t> indices) {
  return invariant_subspace(eigh(a), indices);
}

double invariance_residual(const HermitianMatrix& a, const OrthonormalBasis& x) {
  require_conformal(a, x);
  const CMatrix ax = a.matrix() * x.matrix();
  return norm2(ax - x.matrix() * (x.matrix().adjoint() * ax));
}

std::string_view to_string(InvariantTag tag) {
  switch (tag) {
    case InvariantTag::contiguous_top: return "contiguous-top";
    case InvariantTag::contiguous_bottom: return "contiguous-bottom";
    case InvariantTag::half_top: return "half-top";
    case InvariantTag::half_bottom: return "half-bottom";
    case InvariantTag::general: return "general";
    case InvariantTag::not_invariant: return "not-invariant";
  }
  return "unknown";
}

InvariantClass classify_invariant(const HermitianMatrix& a, std::span<const double> spectrum,
                                  const OrthonormalBasis& x, double tol) {
  require_conformal(a, x);
  InvariantClass c;
  c.residual = invariance_residual(a, x);
  const double spr = spread_of(spectrum);
  if (c.residual > invariance_threshold(a, spr, tol)) return c;

  const RealVector ritz = ritz_values(a, x);
  const std::size_t n = spectrum.size();
  const std::size_t k = ritz.size();
  // Same floor as the residual test, so that A ≈ cI still classifies.
  const double slack = invariance_threshold(a, spr, tol);
  c.contiguous_top = true;
  c.contiguous_bottom = true;
  for (std::size_t i = 0; i < k; ++i) {
    c.contiguous_top = c.contiguous_top && std::abs(ritz[i] - spectrum[i]) <= slack;
    c.contiguous_bottom = c.contiguous_bottom && std::abs(ritz[i] - spectrum[n - k + i]) <= slack;
  }
  const double mid = 0.5 * (spectrum.front() + spectrum.back());
  c.half_top = ritz.back() >= mid - slack;
  c.half_bottom = ritz.front() <= mid + slack;

  if (c.contiguous_top) {
    c.tag = InvariantTag::contiguous_top;
  } else if (c.contiguous_bottom) {
    c.tag = InvariantTag::contiguous_bottom;
  } else if (c.half_top) {
    c.tag = InvariantTag::half_top;
  } else if (c.half_bottom) {
    c.tag = InvariantTag::half_bottom;
  } else {
    c.tag = InvariantTag::general;
  }
  return c;
}

InvariantClass classify_invariant(const HermitianMatrix& a, const OrthonormalBasis& x, double tol) {
  return classify_invariant(a, eigvalsh(a), x, tol);
}

double block_ritz_identity(const HermitianMatrix& a, const AlignedPair& pair, double tol) {
  const CMatrix& x = pair.x_aligned.matrix();
  const CMatrix& y = pair.y_aligned.matrix();
  if (a.order() != x.rows()) throw ContractError("block_ritz_identity: dimension mismatch");
  require_invariant(a, x, tol);
  const Index k = x.cols();
  const CMatrix a11 = compress(a, x);
  CMatrix c = CMatrix::Zero(k, k);
  for (Index i = 0; i < k; ++i) c(i, i) = pair.c_diag[static_cast<std::size_t>(i)];
  CMatrix model = c * a11 * c;
  if (pair.x_perp.cols() > 0) {
    const CMatrix a22 = compress(a, pair.x_perp);
    model += pair.s_block.adjoint() * a22 * pair.s_block;
  }
  return norm2(compress(a, y) - model);
}

}  // namespace ritzmaj
