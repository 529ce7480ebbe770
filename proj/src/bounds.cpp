#include "ritzmaj/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "ritzmaj/errors.hpp"

namespace ritzmaj {

namespace {

struct BoundName {
  BoundId id;
  std::string_view name;
};

constexpr std::array<BoundName, 10> kNames = {{
    {BoundId::sin_1d, "SIN_1D"},
    {BoundId::sin2_1d, "SIN2_1D"},
    {BoundId::sin_general, "SIN_GENERAL"},
    {BoundId::max_general, "MAX_GENERAL"},
    {BoundId::max_invariant_extreme, "MAX_INVARIANT_EXTREME"},
    {BoundId::conjecture_sin2, "CONJECTURE_SIN2"},
    {BoundId::thm_ecos, "THM_ECOS"},
    {BoundId::sin2_plus_sin4, "SIN2_PLUS_SIN4"},
    {BoundId::three_halves_sin2, "THREE_HALVES_SIN2"},
    {BoundId::tan2, "TAN2"},
}};

bool requires_invariance(BoundId id) {
  return !(id == BoundId::sin_1d || id == BoundId::sin_general || id == BoundId::max_general);
}

bool requires_one_dimensional(BoundId id) { return id == BoundId::sin_1d || id == BoundId::sin2_1d; }

}  // namespace

std::string_view to_string(BoundId id) {
  for (const auto& [bid, name] : kNames)
    if (bid == id) return name;
  return "UNKNOWN";
}

std::optional<BoundId> bound_from_string(std::string_view name) {
  for (const auto& [bid, n] : kNames)
    if (n == name) return bid;
  return std::nullopt;
}

std::string_view to_string(Relation r) {
  return r == Relation::weak_majorization ? "weak-majorization" : "scalar-max";
}

std::string_view to_string(InvariantSide s) {
  switch (s) {
    case InvariantSide::x: return "X";
    case InvariantSide::y: return "Y";
    case InvariantSide::both: return "both";
    case InvariantSide::none: return "none";
  }
  return "none";
}

bool InstanceAnalysis::sin2_regime() const { return class_x.sin2_regime() || class_y.sin2_regime(); }

bool InstanceAnalysis::contiguous_extreme() const {
  return (class_x.invariant() && class_x.contiguous()) || (class_y.invariant() && class_y.contiguous());
}

RealVector lhs_ritz_diff(const HermitianMatrix& a, const OrthonormalBasis& x, const OrthonormalBasis& y) {
  if (x.dim() != y.dim() || x.ambient_dim() != y.ambient_dim())
    throw ContractError("lhs_ritz_diff: subspaces must have equal dimensions");
  const RealVector rx = ritz_values(a, x);
  const RealVector ry = ritz_values(a, y);
  RealVector d(rx.size());
  for (std::size_t i = 0; i < d.size(); ++i) d[i] = std::abs(rx[i] - ry[i]);
  return sort_desc(std::move(d));
}

RealVector rhs_vector(BoundId bound, double spread, const AngleVector& angles) {
  if (!(spread >= 0.0)) throw ContractError("rhs_vector: spread must be nonnegative");
  const RealVector& th = angles.values();
  if (is_scalar_max(bound)) {
    const double g = th.empty() ? 0.0 : std::sin(th.front());
    return {bound == BoundId::max_general ? spread * g : spread * g * g};
  }
  RealVector r(th.size());
  for (std::size_t i = 0; i < th.size(); ++i) {
    const double s = std::sin(th[i]);
    const double s2 = s * s;
    switch (bound) {
      case BoundId::sin_1d:
      case BoundId::sin_general: r[i] = spread * s; break;
      case BoundId::sin2_1d:
      case BoundId::conjecture_sin2: r[i] = spread * s2; break;
      case BoundId::thm_ecos: {
        // 1 − cos θ = 2 sin²(θ/2) keeps relative accuracy at small angles.
        const double h = std::sin(0.5 * th[i]);
        r[i] = spread * (2.0 * h * h + 0.5 * s2);
        break;
      }
      case BoundId::sin2_plus_sin4: r[i] = spread * (s2 + 0.5 * s2 * s2); break;
      case BoundId::three_halves_sin2: r[i] = 1.5 * spread * s2; break;
      case BoundId::tan2: {
        if (th[i] >= std::numbers::pi / 2.0) {
          r[i] = std::numeric_limits<double>::infinity();
        } else {
          const double t = std::tan(th[i]);
          r[i] = spread * t * t;
        }
        break;
      }
      default: break;
    }
  }
  return sort_desc(std::move(r));
}

InstanceAnalysis analyze(const HermitianMatrix& a, const OrthonormalBasis& x, const OrthonormalBasis& y,
                         const CheckOptions& opts) {
  if (x.dim() != y.dim() || x.ambient_dim() != y.ambient_dim())
    throw ContractError("analyze: subspaces must have equal dimensions");
  if (a.order() != x.ambient_dim()) throw ContractError("analyze: A and the bases are not conformal");
  InstanceAnalysis r;
  r.n = a.order();
  r.k = x.dim();
  r.spectrum = eigvalsh(a);
  r.spread = spread_of(r.spectrum);
  r.angles = principal_angles(x, y);
  r.ritz_x = ritz_values(a, x);
  r.ritz_y = ritz_values(a, y);
  r.lhs_paired.resize(r.ritz_x.size());
  for (std::size_t i = 0; i < r.ritz_x.size(); ++i) r.lhs_paired[i] = std::abs(r.ritz_x[i] - r.ritz_y[i]);
  r.lhs = sort_desc(r.lhs_paired);
  r.class_x = classify_invariant(a, r.spectrum, x, opts.inv_tol);
  r.class_y = classify_invariant(a, r.spectrum, y, opts.inv_tol);
  const bool ix = r.class_x.invariant();
  const bool iy = r.class_y.invariant();
  r.side = ix && iy ? InvariantSide::both : ix ? InvariantSide::x : iy ? InvariantSide::y : InvariantSide::none;
  return r;
}

BoundCheckReport check_bound(BoundId bound, const InstanceAnalysis& inst, const CheckOptions& opts) {
  BoundCheckReport rep;
  rep.bound = bound;
  rep.relation = is_scalar_max(bound) ? Relation::scalar_max : Relation::weak_majorization;
  rep.invariant_side = inst.side;
  rep.tag_x = inst.class_x.tag;
  rep.tag_y = inst.class_y.tag;
  rep.angles = inst.angles;
  rep.spread = inst.spread;
  rep.tolerance = opts.tol;
  rep.lhs_paired = inst.lhs_paired;

  rep.applicable = true;
  if (requires_one_dimensional(bound) && inst.k != 1) {
    rep.applicable = false;
    rep.reason = "requires one-dimensional subspaces (k = " + std::to_string(inst.k) + ")";
  } else if (requires_invariance(bound) && inst.side == InvariantSide::none) {
    rep.applicable = false;
    rep.reason = "requires X or Y to be A-invariant";
  } else if (bound == BoundId::max_invariant_extreme && !inst.contiguous_extreme()) {
    rep.applicable = false;
    rep.reason = "requires an A-invariant side spanning a contiguous block of extreme eigenvalues";
  }
  rep.proven = rep.applicable && (is_theorem_status(bound) || inst.sin2_regime());

  rep.lhs = rep.relation == Relation::scalar_max ? RealVector{inst.lhs.empty() ? 0.0 : inst.lhs.front()} : inst.lhs;
  rep.rhs = rhs_vector(bound, inst.spread, inst.angles);
  for (double& v : rep.rhs) v *= opts.rhs_scale;

  rep.unbounded_rhs = std::any_of(rep.rhs.begin(), rep.rhs.end(), [](double v) { return std::isinf(v); });
  if (rep.unbounded_rhs) {
    // rhs is sorted descending, so every prefix sum of the right side is +inf.
    rep.verdict.mode = MajorizationMode::weak;
    rep.verdict.prefix_slacks.assign(std::max(rep.lhs.size(), rep.rhs.size()),
                                     std::numeric_limits<double>::infinity());
    rep.verdict.worst_prefix = rep.verdict.prefix_slacks.empty() ? 0 : 1;
    rep.verdict.tolerance_used = opts.tol;
    rep.verdict.holds = true;
  } else {
    rep.verdict = weakly_majorized(rep.lhs, rep.rhs, opts.tol);
  }
  return rep;
}

BoundCheckReport check_bound(BoundId bound, const HermitianMatrix& a, const OrthonormalBasis& x,
                             const OrthonormalBasis& y, const CheckOptions& opts) {
  return check_bound(bound, analyze(a, x, y, opts), opts);
}

std::vector<BoundCheckReport> check_bounds(const InstanceAnalysis& inst, std::span<const BoundId> bounds,
                                           const CheckOptions& opts) {
  std::vector<BoundCheckReport> out;
  out.reserve(bounds.size());
  for (BoundId b : bounds) out.push_back(check_bound(b, inst, opts));
  return out;
}

std::vector<BoundCheckReport> check_all(const HermitianMatrix& a, const OrthonormalBasis& x,
                                        const OrthonormalBasis& y, const CheckOptions& opts) {
  return check_bounds(analyze(a, x, y, opts), kAllBounds, opts);
}

RealVector intermediate_majorant(const HermitianMatrix& a, const AlignedPair& pair, double inv_tol) {
  const CMatrix& x = pair.x_aligned.matrix();
  if (a.order() != x.rows()) throw ContractError("intermediate_majorant: dimension mismatch");
  const double spr = spread(a);
  const double res = invariance_residual(a, pair.x_aligned);
  const double floor = 16.0 * static_cast<double>(a.order() * a.order()) * std::numeric_limits<double>::epsilon() *
                       a.matrix().cwiseAbs().maxCoeff();
  if (res > inv_tol * spr + floor)
    throw ContractError("intermediate_majorant: X is not A-invariant (residual " + std::to_string(res) + ")");

  const Index k = x.cols();
  const CMatrix a11 = x.adjoint() * a.matrix() * x;
  CMatrix c = CMatrix::Zero(k, k);
  for (Index i = 0; i < k; ++i) c(i, i) = pair.c_diag[static_cast<std::size_t>(i)];
  const RealVector l11 = eigvalsh(HermitianMatrix::from_lower(a11));
  const RealVector lc = eigvalsh(HermitianMatrix::from_lower(c * a11 * c));
  RealVector diff(l11.size());
  for (std::size_t i = 0; i < diff.size(); ++i) diff[i] = l11[i] - lc[i];
  diff = sort_desc(std::move(diff));

  RealVector tail(static_cast<std::size_t>(k), 0.0);
  if (pair.x_perp.cols() > 0) {
    const CMatrix a22 = pair.x_perp.adjoint() * a.matrix() * pair.x_perp;
    const CMatrix sas = pair.s_block.adjoint() * a22 * pair.s_block;
    tail = eigvalsh(HermitianMatrix::from_lower(-sas));
  }
  return add_padded(diff, tail);
}

}  // namespace ritzmaj
