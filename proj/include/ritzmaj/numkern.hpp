#pragma once

// Dense complex kernels for small to moderate orders: Hermitian
// eigendecomposition, SVD, orthonormalization and seeded generators.

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace ritzmaj {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using Index = Eigen::Index;
using RealVector = std::vector<double>;

/// Numerical tolerances shared by the kernels. All are relative.
struct Tolerances {
  double orth = 1e-10;  ///< max |QᴴQ − I| accepted for an orthonormal basis
  double eig = 1e-9;    ///< reconstruction residual of eigh/svd relative to the input norm
  double rank = 1e-12;  ///< smallest/largest singular value below which a matrix is rank deficient
  double inv = 1e-8;    ///< invariance residual relative to the spectral spread
};

/// General complex matrix with at least one row and column and finite entries.
class DenseMatrix {
 public:
  explicit DenseMatrix(CMatrix entries);
  static DenseMatrix from_real(const Eigen::MatrixXd& entries);

  Index rows() const { return m_.rows(); }
  Index cols() const { return m_.cols(); }
  const CMatrix& matrix() const { return m_; }
  /// True when every imaginary part is exactly zero.
  bool is_real() const;

 private:
  CMatrix m_;
};

/// Hermitian matrix. Only the lower triangle of the input is read; the upper
/// triangle is its conjugate mirror, so Hermitian symmetry is exact.
class HermitianMatrix {
 public:
  static HermitianMatrix from_lower(const CMatrix& lower);
  /// Accepts `m` when ‖m − mᴴ‖_max ≤ tol·max(1, ‖m‖_max); throws InputDomainError otherwise.
  static HermitianMatrix from_full(const CMatrix& m, double tol = 1e-12);
  static HermitianMatrix diagonal(std::span<const double> d);

  Index order() const { return m_.rows(); }
  const CMatrix& matrix() const { return m_; }

  /// A + αI.
  HermitianMatrix shifted(double alpha) const;
  /// −A.
  HermitianMatrix negated() const;

 private:
  explicit HermitianMatrix(CMatrix m) : m_(std::move(m)) {}
  CMatrix m_;
};

/// n×k matrix with orthonormal columns, 1 ≤ k ≤ n.
class OrthonormalBasis {
 public:
  /// Throws ContractError unless max |QᴴQ − I| ≤ tol, or InputDomainError on
  /// non-finite entries.
  explicit OrthonormalBasis(CMatrix columns, double tol = Tolerances{}.orth);

  /// Columns `cols` of the n×n identity.
  static OrthonormalBasis coordinate(Index n, std::span<const Index> cols);

  Index ambient_dim() const { return q_.rows(); }
  Index dim() const { return q_.cols(); }
  const CMatrix& matrix() const { return q_; }

  double orthonormality_error() const;

 private:
  CMatrix q_;
};

double orthonormality_error(const CMatrix& q);

struct EigenDecomposition {
  RealVector values;         ///< nonincreasing
  OrthonormalBasis vectors;  ///< column j pairs with values[j]
  int sweeps = 0;
};

struct SingularValueDecomposition {
  OrthonormalBasis u;  ///< rows × min(rows, cols)
  RealVector s;        ///< nonincreasing, nonnegative
  OrthonormalBasis v;  ///< cols × min(rows, cols)
};

/// Cyclic complex Jacobi eigensolver. Eigenvalues are returned in
/// nonincreasing order. Throws InputDomainError on non-finite entries and
/// NumericalFailure if the sweeps do not converge.
EigenDecomposition eigh(const HermitianMatrix& a);

/// Eigenvalues only, nonincreasing.
RealVector eigvalsh(const HermitianMatrix& a);

/// One-sided (Hestenes) Jacobi SVD, b = U diag(s) Vᴴ with thin factors.
SingularValueDecomposition svd(const DenseMatrix& b);

/// Singular values only, nonincreasing, length min(rows, cols).
RealVector singular_values(const CMatrix& b);

/// Spectral norm ‖b‖₂.
double norm2(const CMatrix& b);

/// Orthonormal basis of the column space of `b`, columns produced in input
/// order by twice-iterated Gram-Schmidt. Throws RankError when the smallest
/// singular value is ≤ tol.rank·‖b‖.
OrthonormalBasis orthonormalize(const DenseMatrix& b, const Tolerances& tol = {});

/// Completes the orthonormal columns of `q` flagged in `known` to a full set
/// of orthonormal columns. Unknown columns are overwritten.
void complete_orthonormal(CMatrix& q, const std::vector<bool>& known);

/// Haar-distributed n×n unitary matrix; deterministic in `seed`.
OrthonormalBasis random_unitary(Index n, std::uint64_t seed);

/// Q·diag(spectrum)·Qᴴ with Q = random_unitary(n, seed), or Q = I when
/// `identity_basis` is set.
HermitianMatrix hermitian_from_spectrum(std::span<const double> spectrum, std::uint64_t seed,
                                        bool identity_basis = false);

/// Gaussian Hermitian matrix (G + Gᴴ)/2; used by property suites.
HermitianMatrix random_hermitian(Index n, std::uint64_t seed);

/// Matrix of independent complex normal entries.
CMatrix random_complex(Index rows, Index cols, std::uint64_t seed);

}  // namespace ritzmaj
