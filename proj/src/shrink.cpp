#include <cmath>
#include <functional>

#include "ritzmaj/errors.hpp"
#include "ritzmaj/harness.hpp"

namespace ritzmaj {

namespace {

struct State {
  CMatrix a;
  CMatrix x;
  CMatrix y;
};

constexpr std::size_t kMaxSteps = 500;

std::optional<BoundCheckReport> still_violated(const State& s, BoundId bound, const CheckOptions& opts) {
  try {
    const auto a = HermitianMatrix::from_full(s.a);
    const OrthonormalBasis x(s.x), y(s.y);
    auto r = check_bound(bound, a, x, y, opts);
    if (r.violated()) return r;
  } catch (const Error&) {
  }
  return std::nullopt;
}

CMatrix drop_row(const CMatrix& m, Index j) {
  CMatrix out(m.rows() - 1, m.cols());
  out.topRows(j) = m.topRows(j);
  out.bottomRows(m.rows() - 1 - j) = m.bottomRows(m.rows() - 1 - j);
  return out;
}

CMatrix drop_col(const CMatrix& m, Index j) { return drop_row(m.transpose(), j).transpose(); }

CMatrix dominant_columns(const CMatrix& m, Index k) {
  const auto d = svd(DenseMatrix(m));
  return d.u.matrix().leftCols(k);
}

bool is_diagonal(const CMatrix& a) {
  for (Index c = 0; c < a.cols(); ++c)
    for (Index r = 0; r < a.rows(); ++r)
      if (r != c && a(r, c) != Complex(0.0)) return false;
  return true;
}

// Candidate moves in preference order; each returns the reduced states to try.
std::vector<State> candidates(const State& s) {
  std::vector<State> out;
  const Index n = s.a.rows();
  const Index k = s.x.cols();

  // Smaller ambient space.
  if (n >= 2) {
    for (Index j = 0; j < n; ++j) {
      const CMatrix a = drop_col(drop_row(s.a, j), j);
      const CMatrix xr = drop_row(s.x, j), yr = drop_row(s.y, j);
      if (n - 1 >= k) {
        try {
          out.push_back({a, orthonormalize(DenseMatrix(xr)).matrix(), orthonormalize(DenseMatrix(yr)).matrix()});
          continue;
        } catch (const Error&) {
        }
      }
      if (k >= 2) {
        try {
          out.push_back({a, dominant_columns(xr, k - 1), dominant_columns(yr, k - 1)});
        } catch (const Error&) {
        }
      }
    }
  }

  // Smaller subspaces: drop one aligned pair of columns.
  if (k >= 2) {
    try {
      const AlignedPair p = align_bases(OrthonormalBasis(s.x), OrthonormalBasis(s.y));
      for (Index i = 0; i < k; ++i)
        out.push_back({s.a, drop_col(p.x_aligned.matrix(), i), drop_col(p.y_aligned.matrix(), i)});
    } catch (const Error&) {
    }
  }

  // Simpler spectrum.
  if (is_diagonal(s.a)) {
    const Eigen::VectorXd lam = s.a.diagonal().real();
    const double hi = lam.maxCoeff(), lo = lam.minCoeff();
    auto push_snapped = [&](const std::function<double(double)>& f) {
      State t = s;
      for (Index i = 0; i < n; ++i) t.a(i, i) = f(lam(i));
      if (t.a != s.a) out.push_back(std::move(t));
    };
    for (double q : {1.0, 2.0, 4.0, 8.0}) push_snapped([q](double v) { return std::round(v * q) / q; });
    if (hi > lo) {
      const double c = 0.5 * (hi + lo), h = 0.5 * (hi - lo);
      for (double q : {1.0, 2.0, 4.0, 8.0})
        push_snapped([=](double v) { return std::round((v - c) / h * q) / q; });
    }
  }

  // Simpler cosines: multiples of 1/8, all at once and then one at a time.
  try {
    const AlignedPair p = align_bases(OrthonormalBasis(s.x), OrthonormalBasis(s.y));
    const CMatrix& xa = p.x_aligned.matrix();
    const CMatrix& ya = p.y_aligned.matrix();
    auto snapped = [&](Index only) -> std::optional<State> {
      State t{s.a, xa, ya};
      bool changed = false;
      for (Index i = 0; i < k; ++i) {
        if (only >= 0 && i != only) continue;
        const double c = p.c_diag[static_cast<std::size_t>(i)];
        const double si = std::sqrt(std::max(0.0, 1.0 - c * c));
        const double c2 = std::round(8.0 * c) / 8.0;
        if (si <= 1e-8 || c2 == c) continue;
        const CVector w = (ya.col(i) - xa.col(i) * c) / si;
        t.y.col(i) = xa.col(i) * c2 + w * std::sqrt(1.0 - c2 * c2);
        changed = true;
      }
      if (!changed) return std::nullopt;
      return t;
    };
    if (auto t = snapped(-1)) out.push_back(std::move(*t));
    if (k >= 2)
      for (Index i = 0; i < k; ++i)
        if (auto t = snapped(i)) out.push_back(std::move(*t));
  } catch (const Error&) {
  }
  return out;
}

}  // namespace

ShrinkResult shrink(const HermitianMatrix& a, const OrthonormalBasis& x, const OrthonormalBasis& y, BoundId bound,
                    const CheckOptions& opts) {
  const auto first = check_bound(bound, a, x, y, opts);
  if (!first.violated()) throw ContractError("shrink needs an instance that violates the bound");

  // Work in the eigenbasis of A so that A stays diagonal under every move.
  State s{a.matrix(), x.matrix(), y.matrix()};
  BoundCheckReport report = first;
  std::size_t steps = 0;
  {
    const auto eig = eigh(a);
    const CMatrix& v = eig.vectors.matrix();
    const State canon{HermitianMatrix::diagonal(eig.values).matrix(), v.adjoint() * x.matrix(),
                      v.adjoint() * y.matrix()};
    if (auto r = still_violated(canon, bound, opts)) {
      s = canon;
      report = *r;
    }
  }

  bool moved = true;
  while (moved && steps < kMaxSteps) {
    moved = false;
    for (State& c : candidates(s)) {
      if (auto r = still_violated(c, bound, opts)) {
        s = std::move(c);
        report = std::move(*r);
        ++steps;
        moved = true;
        break;
      }
    }
  }

  if (steps == 0) return {a, x, y, first, 0};
  return {HermitianMatrix::from_full(s.a), OrthonormalBasis(s.x), OrthonormalBasis(s.y), std::move(report), steps};
}

}  // namespace ritzmaj
