#include "ritzmaj/majorize.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "ritzmaj/errors.hpp"

namespace ritzmaj {

namespace {

void require_finite(std::span<const double> v, const char* what) {
  for (double d : v)
    if (!std::isfinite(d)) throw InputDomainError(std::string(what) + ": non-finite entry");
}

MajorizationVerdict compare(std::span<const double> x, std::span<const double> y, double tol,
                            MajorizationMode mode) {
  require_finite(x, "majorization lhs");
  require_finite(y, "majorization rhs");
  const std::size_t len = std::max(x.size(), y.size());
  const RealVector xs = sort_desc(pad_to(RealVector(x.begin(), x.end()), len));
  const RealVector ys = sort_desc(pad_to(RealVector(y.begin(), y.end()), len));

  MajorizationVerdict v;
  v.mode = mode;
  v.prefix_slacks.resize(len);
  double sx = 0.0, sy = 0.0, largest = 0.0;
  for (std::size_t i = 0; i < len; ++i) {
    sx += xs[i];
    sy += ys[i];
    v.prefix_slacks[i] = sy - sx;
    largest = std::max({largest, std::abs(sx), std::abs(sy)});
  }
  v.scale = std::max(1.0, largest);
  v.tolerance_used = tol * v.scale;
  v.total_gap = sx - sy;
  if (len > 0) {
    const auto it = std::min_element(v.prefix_slacks.begin(), v.prefix_slacks.end());
    v.worst_prefix = static_cast<std::size_t>(it - v.prefix_slacks.begin()) + 1;
    v.holds = *it >= -v.tolerance_used;
  }
  if (mode == MajorizationMode::strong) v.holds = v.holds && std::abs(v.total_gap) <= v.tolerance_used;
  return v;
}

}  // namespace

double MajorizationVerdict::min_slack() const {
  if (prefix_slacks.empty()) return std::numeric_limits<double>::infinity();
  return *std::min_element(prefix_slacks.begin(), prefix_slacks.end());
}

RealVector sort_desc(RealVector x) {
  std::sort(x.begin(), x.end(), std::greater<>());
  return x;
}

RealVector sort_asc(RealVector x) {
  std::sort(x.begin(), x.end());
  return x;
}

RealVector abs_vec(RealVector x) {
  for (double& d : x) d = std::abs(d);
  return x;
}

RealVector pad_to(RealVector x, std::size_t len) {
  if (len < x.size())
    throw ContractError("pad_to: target length " + std::to_string(len) + " is shorter than the vector (" +
                        std::to_string(x.size()) + ")");
  x.resize(len, 0.0);
  return x;
}

RealVector add_padded(std::span<const double> x, std::span<const double> y) {
  RealVector out(std::max(x.size(), y.size()), 0.0);
  for (std::size_t i = 0; i < x.size(); ++i) out[i] += x[i];
  for (std::size_t i = 0; i < y.size(); ++i) out[i] += y[i];
  return out;
}

RealVector multiply_padded(std::span<const double> x, std::span<const double> y) {
  RealVector out(std::max(x.size(), y.size()), 0.0);
  for (std::size_t i = 0; i < std::min(x.size(), y.size()); ++i) out[i] = x[i] * y[i];
  return out;
}

MajorizationVerdict weakly_majorized(std::span<const double> x, std::span<const double> y, double tol) {
  return compare(x, y, tol, MajorizationMode::weak);
}

MajorizationVerdict strongly_majorized(std::span<const double> x, std::span<const double> y, double tol) {
  return compare(x, y, tol, MajorizationMode::strong);
}

bool pnorm_consequence(std::span<const double> x, std::span<const double> y, double p, double tol) {
  if (!(p >= 1.0)) throw ContractError("pnorm_consequence: p must be >= 1");
  require_finite(x, "pnorm lhs");
  require_finite(y, "pnorm rhs");
  double scale = 0.0;
  for (double d : x) {
    if (d < 0.0) throw ContractError("pnorm_consequence: lhs has a negative entry");
    scale = std::max(scale, d);
  }
  for (double d : y) {
    if (d < 0.0) throw ContractError("pnorm_consequence: rhs has a negative entry");
    scale = std::max(scale, d);
  }
  if (scale == 0.0) return true;
  // Normalizing by the largest entry keeps large p from overflowing.
  auto norm = [&](std::span<const double> v) {
    double s = 0.0;
    for (double d : v) s += std::pow(d / scale, p);
    return scale * std::pow(s, 1.0 / p);
  };
  const double lhs = norm(x);
  const double rhs = norm(y);
  return lhs <= rhs + tol * std::max(1.0, rhs);
}

}  // namespace ritzmaj
