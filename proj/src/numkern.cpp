#include "ritzmaj/numkern.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "ritzmaj/errors.hpp"
#include "ritzmaj/rng.hpp"

namespace ritzmaj {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr int kMaxSweeps = 100;

bool all_finite(const CMatrix& m) {
  for (Index j = 0; j < m.cols(); ++j)
    for (Index i = 0; i < m.rows(); ++i)
      if (!std::isfinite(m(i, j).real()) || !std::isfinite(m(i, j).imag())) return false;
  return true;
}

double max_abs(const CMatrix& m) {
  double r = 0.0;
  for (Index j = 0; j < m.cols(); ++j)
    for (Index i = 0; i < m.rows(); ++i) r = std::max(r, std::abs(m(i, j)));
  return r;
}

std::vector<Index> descending_order(const RealVector& v) {
  std::vector<Index> order(v.size());
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Index a, Index b) { return v[static_cast<std::size_t>(a)] > v[static_cast<std::size_t>(b)]; });
  return order;
}

// Projects the columns of `basis` out of `v` twice (CGS2) and returns the
// remaining norm.
double project_out(CVector& v, const CMatrix& basis, Index ncols) {
  for (int pass = 0; pass < 2; ++pass) {
    for (Index j = 0; j < ncols; ++j) {
      const Complex c = basis.col(j).dot(v);
      v -= c * basis.col(j);
    }
  }
  return v.norm();
}

}  // namespace

// ---------------------------------------------------------------- DenseMatrix

DenseMatrix::DenseMatrix(CMatrix entries) : m_(std::move(entries)) {
  if (m_.rows() < 1 || m_.cols() < 1) throw InputDomainError("matrix must have at least one row and column");
  if (!all_finite(m_)) throw InputDomainError("matrix has non-finite entries");
}

DenseMatrix DenseMatrix::from_real(const Eigen::MatrixXd& entries) {
  return DenseMatrix(entries.cast<Complex>());
}

bool DenseMatrix::is_real() const {
  return (m_.imag().array() == 0.0).all();
}

// ------------------------------------------------------------ HermitianMatrix

HermitianMatrix HermitianMatrix::from_lower(const CMatrix& lower) {
  if (lower.rows() != lower.cols() || lower.rows() < 1)
    throw InputDomainError("Hermitian matrix must be square and nonempty");
  const Index n = lower.rows();
  CMatrix m(n, n);
  for (Index j = 0; j < n; ++j) {
    m(j, j) = Complex(lower(j, j).real(), 0.0);
    for (Index i = j + 1; i < n; ++i) {
      m(i, j) = lower(i, j);
      m(j, i) = std::conj(lower(i, j));
    }
  }
  if (!all_finite(m)) throw InputDomainError("Hermitian matrix has non-finite entries");
  return HermitianMatrix(std::move(m));
}

HermitianMatrix HermitianMatrix::from_full(const CMatrix& m, double tol) {
  if (m.rows() != m.cols() || m.rows() < 1)
    throw InputDomainError("Hermitian matrix must be square and nonempty");
  if (!all_finite(m)) throw InputDomainError("Hermitian matrix has non-finite entries");
  const CMatrix asym = m - m.adjoint();
  const double scale = std::max(1.0, max_abs(m));
  if (max_abs(asym) > tol * scale)
    throw InputDomainError("matrix is not Hermitian (max |A - A^H| = " + std::to_string(max_abs(asym)) + ")");
  return from_lower(m);
}

HermitianMatrix HermitianMatrix::diagonal(std::span<const double> d) {
  if (d.empty()) throw InputDomainError("diagonal must be nonempty");
  CMatrix m = CMatrix::Zero(static_cast<Index>(d.size()), static_cast<Index>(d.size()));
  for (std::size_t i = 0; i < d.size(); ++i) m(static_cast<Index>(i), static_cast<Index>(i)) = d[i];
  return from_lower(m);
}

HermitianMatrix HermitianMatrix::shifted(double alpha) const {
  CMatrix m = m_;
  m.diagonal().array() += alpha;
  return HermitianMatrix(std::move(m));
}

HermitianMatrix HermitianMatrix::negated() const { return HermitianMatrix(-m_); }

// ----------------------------------------------------------- OrthonormalBasis

double orthonormality_error(const CMatrix& q) {
  const CMatrix g = q.adjoint() * q - CMatrix::Identity(q.cols(), q.cols());
  return max_abs(g);
}

OrthonormalBasis::OrthonormalBasis(CMatrix columns, double tol) : q_(std::move(columns)) {
  if (q_.cols() < 1 || q_.cols() > q_.rows())
    throw ContractError("orthonormal basis must satisfy 1 <= k <= n (got " + std::to_string(q_.rows()) + "x" +
                        std::to_string(q_.cols()) + ")");
  if (!all_finite(q_)) throw InputDomainError("basis has non-finite entries");
  const double err = ritzmaj::orthonormality_error(q_);
  if (!(err <= tol))
    throw ContractError("columns are not orthonormal (max |Q^H Q - I| = " + std::to_string(err) + ")");
}

OrthonormalBasis OrthonormalBasis::coordinate(Index n, std::span<const Index> cols) {
  CMatrix q = CMatrix::Zero(n, static_cast<Index>(cols.size()));
  for (std::size_t j = 0; j < cols.size(); ++j) {
    if (cols[j] < 0 || cols[j] >= n) throw ContractError("coordinate index out of range");
    q(cols[j], static_cast<Index>(j)) = 1.0;
  }
  return OrthonormalBasis(std::move(q));
}

double OrthonormalBasis::orthonormality_error() const { return ritzmaj::orthonormality_error(q_); }

// ---------------------------------------------------------------------- eigh

EigenDecomposition eigh(const HermitianMatrix& a) {
  const Index n = a.order();
  CMatrix m = a.matrix();
  CMatrix v = CMatrix::Identity(n, n);
  if (!all_finite(m)) throw InputDomainError("eigh: non-finite entries");

  const double scale = m.norm();
  const double floor = kEps * kEps * scale;
  int sweep = 0;
  bool rotated = n > 1 && scale > 0.0;
  while (rotated) {
    if (sweep == kMaxSweeps) throw NumericalFailure("eigh: Jacobi sweeps did not converge", sweep);
    ++sweep;
    rotated = false;
    for (Index p = 0; p < n - 1; ++p) {
      for (Index q = p + 1; q < n; ++q) {
        const Complex apq = m(p, q);
        const double mag = std::abs(apq);
        const double app = m(p, p).real();
        const double aqq = m(q, q).real();
        if (mag <= std::max(kEps * std::sqrt(std::abs(app * aqq)), floor)) {
          m(p, q) = m(q, p) = 0.0;
          continue;
        }
        rotated = true;
        const Complex phase = apq / mag;
        const double theta = (aqq - app) / (2.0 * mag);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        // J = [[c, s·phase], [−s·conj(phase), c]] on coordinates (p, q); M ← Jᴴ M J.
        const Complex jqp = -s * std::conj(phase);
        const Complex jpq = s * phase;
        for (Index r = 0; r < n; ++r) {
          const Complex mp = m(r, p), mq = m(r, q);
          m(r, p) = c * mp + jqp * mq;
          m(r, q) = jpq * mp + c * mq;
          const Complex vp = v(r, p), vq = v(r, q);
          v(r, p) = c * vp + jqp * vq;
          v(r, q) = jpq * vp + c * vq;
        }
        for (Index r = 0; r < n; ++r) {
          const Complex mp = m(p, r), mq = m(q, r);
          m(p, r) = c * mp + std::conj(jqp) * mq;
          m(q, r) = std::conj(jpq) * mp + c * mq;
        }
        m(p, q) = m(q, p) = 0.0;
        m(p, p) = app - t * mag;
        m(q, q) = aqq + t * mag;
      }
    }
  }

  RealVector diag(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) diag[static_cast<std::size_t>(i)] = m(i, i).real();
  const auto order = descending_order(diag);
  RealVector values(diag.size());
  CMatrix vecs(n, n);
  for (Index j = 0; j < n; ++j) {
    values[static_cast<std::size_t>(j)] = diag[static_cast<std::size_t>(order[static_cast<std::size_t>(j)])];
    vecs.col(j) = v.col(order[static_cast<std::size_t>(j)]);
  }
  return {std::move(values), OrthonormalBasis(std::move(vecs)), sweep};
}

RealVector eigvalsh(const HermitianMatrix& a) { return eigh(a).values; }

// ----------------------------------------------------------------------- svd

namespace {

struct RawSvd {
  CMatrix u;
  RealVector s;
  CMatrix v;
};

// Requires rows ≥ cols.
RawSvd hestenes(const CMatrix& b) {
  const Index n = b.cols();
  CMatrix u = b;
  CMatrix v = CMatrix::Identity(n, n);
  int sweep = 0;
  bool rotated = n > 1;
  while (rotated) {
    if (sweep == kMaxSweeps) throw NumericalFailure("svd: Jacobi sweeps did not converge", sweep);
    ++sweep;
    rotated = false;
    for (Index p = 0; p < n - 1; ++p) {
      for (Index q = p + 1; q < n; ++q) {
        const double alpha = u.col(p).squaredNorm();
        const double beta = u.col(q).squaredNorm();
        const Complex gamma = u.col(p).dot(u.col(q));
        const double g = std::abs(gamma);
        if (g == 0.0 || g <= kEps * std::sqrt(alpha) * std::sqrt(beta)) continue;
        rotated = true;
        const Complex phase = gamma / g;
        const double zeta = (beta - alpha) / (2.0 * g);
        const double t = (zeta >= 0.0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;
        // [u_p, u_q] ← [u_p, u_q]·T with T = [[c, s], [−s·conj(phase), c·conj(phase)]].
        const Complex tqp = -s * std::conj(phase);
        const Complex tqq = c * std::conj(phase);
        for (Index r = 0; r < u.rows(); ++r) {
          const Complex up = u(r, p), uq = u(r, q);
          u(r, p) = c * up + tqp * uq;
          u(r, q) = s * up + tqq * uq;
        }
        for (Index r = 0; r < n; ++r) {
          const Complex vp = v(r, p), vq = v(r, q);
          v(r, p) = c * vp + tqp * vq;
          v(r, q) = s * vp + tqq * vq;
        }
      }
    }
  }

  RealVector norms(static_cast<std::size_t>(n));
  for (Index j = 0; j < n; ++j) norms[static_cast<std::size_t>(j)] = u.col(j).norm();
  const auto order = descending_order(norms);
  RawSvd out{CMatrix(u.rows(), n), RealVector(norms.size()), CMatrix(n, n)};
  for (Index j = 0; j < n; ++j) {
    const Index src = order[static_cast<std::size_t>(j)];
    out.s[static_cast<std::size_t>(j)] = norms[static_cast<std::size_t>(src)];
    out.u.col(j) = u.col(src);
    out.v.col(j) = v.col(src);
  }
  const double smax = n > 0 ? out.s.front() : 0.0;
  const double zero_cut = smax * kEps * static_cast<double>(std::max<Index>(b.rows(), 1));
  std::vector<bool> known(static_cast<std::size_t>(n));
  for (Index j = 0; j < n; ++j) {
    const double sj = out.s[static_cast<std::size_t>(j)];
    known[static_cast<std::size_t>(j)] = sj > zero_cut && sj > 0.0;
    if (known[static_cast<std::size_t>(j)]) out.u.col(j) /= sj;
  }
  complete_orthonormal(out.u, known);
  return out;
}

}  // namespace

SingularValueDecomposition svd(const DenseMatrix& b) {
  const CMatrix& m = b.matrix();
  if (m.rows() >= m.cols()) {
    RawSvd r = hestenes(m);
    return {OrthonormalBasis(std::move(r.u)), std::move(r.s), OrthonormalBasis(std::move(r.v))};
  }
  RawSvd r = hestenes(m.adjoint());
  return {OrthonormalBasis(std::move(r.v)), std::move(r.s), OrthonormalBasis(std::move(r.u))};
}

RealVector singular_values(const CMatrix& b) {
  if (b.rows() == 0 || b.cols() == 0) return {};
  if (!all_finite(b)) throw InputDomainError("singular_values: non-finite entries");
  return b.rows() >= b.cols() ? hestenes(b).s : hestenes(b.adjoint()).s;
}

double norm2(const CMatrix& b) {
  const RealVector s = singular_values(b);
  return s.empty() ? 0.0 : s.front();
}

void complete_orthonormal(CMatrix& q, const std::vector<bool>& known) {
  const Index n = q.rows();
  const Index k = q.cols();
  // Gather the known columns first so each new column is orthogonalized
  // against everything accepted so far.
  CMatrix accepted(n, k);
  Index count = 0;
  for (Index j = 0; j < k; ++j)
    if (known[static_cast<std::size_t>(j)]) accepted.col(count++) = q.col(j);
  for (Index j = 0; j < k; ++j) {
    if (known[static_cast<std::size_t>(j)]) continue;
    CVector best;
    double best_norm = -1.0;
    for (Index e = 0; e < n; ++e) {
      CVector cand = CVector::Zero(n);
      cand(e) = 1.0;
      const double r = project_out(cand, accepted, count);
      if (r > best_norm + 1e-12) {
        best_norm = r;
        best = std::move(cand);
      }
    }
    if (best_norm <= 0.0) throw ContractError("complete_orthonormal: more columns than ambient dimension");
    best /= best.norm();
    q.col(j) = best;
    accepted.col(count++) = best;
  }
}

// --------------------------------------------------------------- orthonormal

OrthonormalBasis orthonormalize(const DenseMatrix& b, const Tolerances& tol) {
  const CMatrix& m = b.matrix();
  if (m.cols() > m.rows())
    throw RankError("orthonormalize: more columns than rows", 0.0);
  const RealVector s = singular_values(m);
  const double smin = s.back();
  if (smin <= tol.rank * s.front())
    throw RankError("orthonormalize: input is rank deficient (smallest singular value " + std::to_string(smin) + ")",
                    smin);
  CMatrix q(m.rows(), m.cols());
  for (Index j = 0; j < m.cols(); ++j) {
    CVector v = m.col(j);
    const double r = project_out(v, q, j);
    q.col(j) = v / r;
  }
  return OrthonormalBasis(std::move(q));
}

// ---------------------------------------------------------------- generators

CMatrix random_complex(Index rows, Index cols, std::uint64_t seed) {
  Rng rng(seed);
  CMatrix g(rows, cols);
  for (Index j = 0; j < cols; ++j)
    for (Index i = 0; i < rows; ++i) g(i, j) = rng.complex_normal();
  return g;
}

OrthonormalBasis random_unitary(Index n, std::uint64_t seed) {
  if (n < 1) throw ContractError("random_unitary: n must be positive");
  // Gram-Schmidt QR of a Ginibre matrix leaves R with a positive diagonal,
  // which makes Q Haar distributed.
  const CMatrix g = random_complex(n, n, seed);
  CMatrix q(n, n);
  for (Index j = 0; j < n; ++j) {
    CVector v = g.col(j);
    const double r = project_out(v, q, j);
    q.col(j) = v / r;
  }
  return OrthonormalBasis(std::move(q));
}

HermitianMatrix hermitian_from_spectrum(std::span<const double> spectrum, std::uint64_t seed, bool identity_basis) {
  for (double d : spectrum)
    if (!std::isfinite(d)) throw InputDomainError("hermitian_from_spectrum: non-finite spectrum");
  if (identity_basis) return HermitianMatrix::diagonal(spectrum);
  const Index n = static_cast<Index>(spectrum.size());
  const CMatrix q = random_unitary(n, seed).matrix();
  Eigen::VectorXd d(n);
  for (Index i = 0; i < n; ++i) d(i) = spectrum[static_cast<std::size_t>(i)];
  const CMatrix a = q * d.cast<Complex>().asDiagonal() * q.adjoint();
  return HermitianMatrix::from_lower(a);
}

HermitianMatrix random_hermitian(Index n, std::uint64_t seed) {
  const CMatrix g = random_complex(n, n, seed);
  return HermitianMatrix::from_lower((g + g.adjoint()) * 0.5);
}

}  // namespace ritzmaj
