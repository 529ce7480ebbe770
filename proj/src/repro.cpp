#include <cmath>
#include <numbers>
#include <string>

#include "ritzmaj/errors.hpp"
#include "ritzmaj/harness.hpp"

namespace ritzmaj {

namespace {

void expect(bool ok, const std::string& what) {
  if (!ok) throw ReproductionFailure(what);
}

bool close(const RealVector& a, const RealVector& b, double tol) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!(std::abs(a[i] - b[i]) <= tol)) return false;
  return true;
}

bool close(const CMatrix& a, const CMatrix& b, double tol) {
  return a.rows() == b.rows() && a.cols() == b.cols() && (a - b).cwiseAbs().maxCoeff() <= tol;
}

}  // namespace

BoundCheckReport repro_sharp(std::size_t m, const AngleVector& angles) {
  if (m == 0) throw ContractError("sharp example needs m >= 1");
  if (angles.size() != m) throw ContractError("sharp example needs one angle per dimension");
  const Index n = static_cast<Index>(2 * m);
  const Index mm = static_cast<Index>(m);

  RealVector d(2 * m, 1.0);
  for (std::size_t i = m; i < 2 * m; ++i) d[i] = -1.0;
  const HermitianMatrix a = HermitianMatrix::diagonal(d);
  std::vector<Index> first(m);
  for (Index i = 0; i < mm; ++i) first[static_cast<std::size_t>(i)] = i;
  const OrthonormalBasis x = OrthonormalBasis::coordinate(n, first);
  const CMatrix directions = CMatrix::Identity(n, n).rightCols(mm);
  const OrthonormalBasis y = perturb_subspace_along(x, angles, directions);

  BoundCheckReport r = check_bound(BoundId::conjecture_sin2, a, x, y);
  constexpr double tol = 1e-10;
  expect(std::abs(r.spread - 2.0) <= tol, "spread is not 2");
  expect(close(r.angles.values(), angles.values(), tol), "recovered angles differ from the construction");
  RealVector expected;
  for (double s : angles.sines()) expected.push_back(2.0 * s * s);
  expected = sort_desc(expected);
  expect(close(r.lhs, expected, tol), "lhs differs from 2 sin^2");
  expect(r.applicable && r.proven, "sin^2 bound not applicable to the sharp example");
  expect(r.verdict.holds, "sin^2 bound fails on the sharp example");
  for (double s : r.verdict.prefix_slacks) expect(std::abs(s) <= tol, "sin^2 bound is not attained");
  return r;
}

IntermediateRecord repro_intermediate_counterexample() {
  CMatrix am = CMatrix::Zero(4, 4);
  am(0, 1) = am(1, 0) = 1.0;
  am(2, 2) = am(3, 3) = 1.0;
  const HermitianMatrix a = HermitianMatrix::from_full(am);
  const std::vector<Index> xc{0, 1}, yc{2, 1};
  const OrthonormalBasis x = OrthonormalBasis::coordinate(4, xc);
  const OrthonormalBasis y = OrthonormalBasis::coordinate(4, yc);

  IntermediateRecord rec;
  rec.conjecture = check_bound(BoundId::conjecture_sin2, a, x, y);
  rec.angles = rec.conjecture.angles;
  rec.spread = rec.conjecture.spread;
  rec.xax = x.matrix().adjoint() * am * x.matrix();
  rec.yay = y.matrix().adjoint() * am * y.matrix();
  rec.lhs = rec.conjecture.lhs;

  const AlignedPair p = align_bases(x, y);
  const CMatrix& xa = p.x_aligned.matrix();
  const CMatrix a11 = xa.adjoint() * am * xa;
  const CMatrix a22 = p.x_perp.adjoint() * am * p.x_perp;
  CMatrix c = CMatrix::Zero(2, 2);
  for (Index i = 0; i < 2; ++i) c(i, i) = p.c_diag[static_cast<std::size_t>(i)];
  rec.c_a11_c = c * a11 * c;
  rec.sh_a22_s = p.s_block.adjoint() * a22 * p.s_block;
  rec.cs_identity_error = p.cs_identity_error();
  rec.majorant = intermediate_majorant(a, p);
  rec.majorant_abs_sorted = sort_desc(abs_vec(rec.majorant));
  rec.bound_rhs = rhs_vector(BoundId::conjecture_sin2, rec.spread, rec.angles);
  rec.majorant_verdict = weakly_majorized(rec.majorant_abs_sorted, rec.bound_rhs, CheckOptions{}.tol);

  constexpr double tol = 1e-12;
  const double half_pi = std::numbers::pi / 2;
  expect(close(rec.angles.values(), RealVector{half_pi, 0.0}, tol), "angles are not (pi/2, 0)");
  expect(std::abs(rec.spread - 2.0) <= tol, "spread is not 2");
  CMatrix expect_xax = CMatrix::Zero(2, 2);
  expect_xax(0, 1) = expect_xax(1, 0) = 1.0;
  expect(close(rec.xax, expect_xax, tol), "XᴴAX differs");
  CMatrix expect_yay = CMatrix::Zero(2, 2);
  expect_yay(0, 0) = 1.0;
  expect(close(rec.yay, expect_yay, tol), "YᴴAY differs");
  expect(close(rec.c_a11_c, CMatrix::Zero(2, 2), tol), "C·A11·C is not zero");
  // Diagonal (1, 0) up to the unimodular phases of the aligned bases.
  expect(close(rec.sh_a22_s, expect_yay, tol), "SᴴA22S is not diag(1, 0)");
  expect(rec.cs_identity_error <= tol, "C² + SᴴS differs from I");
  expect(close(rec.lhs, RealVector{1.0, 0.0}, tol), "lhs is not (1, 0)");
  expect(close(rec.majorant, RealVector{1.0, -2.0}, tol), "intermediate vector is not (1, -2)");
  expect(close(rec.bound_rhs, RealVector{2.0, 0.0}, tol), "spr·sin² is not (2, 0)");
  expect(rec.conjecture.applicable && rec.conjecture.verdict.holds, "the sin² bound itself should hold");
  expect(!rec.majorant_verdict.holds && rec.majorant_verdict.worst_prefix == 2 &&
             std::abs(rec.majorant_verdict.min_slack() + 1.0) <= tol,
         "intermediate vector should fail at prefix 2 with slack -1");
  return rec;
}

}  // namespace ritzmaj
