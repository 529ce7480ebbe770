#include <algorithm>
#include <cmath>
#include <functional>

#include "ritzmaj/errors.hpp"
#include "ritzmaj/harness.hpp"
#include "ritzmaj/rng.hpp"

namespace ritzmaj {

namespace {

// One trial returns the worst normalized slack over its checks; negative
// beyond -tol means the property failed.
using Trial = std::function<double(Rng&, std::uint64_t)>;

double worst_of(std::initializer_list<MajorizationVerdict> vs) {
  double w = std::numeric_limits<double>::infinity();
  // A failed verdict counts as at least −1 even when only the strong-mode
  // total equality is what failed.
  for (const auto& v : vs) w = std::min(w, v.holds ? v.min_slack() / v.scale : std::min(v.min_slack() / v.scale, -1.0));
  return w;
}

RealVector random_vector(Rng& rng, std::size_t n, double scale) {
  RealVector v(n);
  for (double& x : v) x = scale * rng.normal();
  return v;
}

double random_scale(Rng& rng) { return std::pow(10.0, rng.uniform(-2.0, 2.0)); }

// x = T·y with T a product of two-coordinate averaging maps, so x ≺ y by construction.
RealVector doubly_stochastic_mix(RealVector y, Rng& rng) {
  const std::size_t n = y.size();
  if (n < 2) return y;
  const std::size_t steps = rng.between(1, 2 * n);
  for (std::size_t s = 0; s < steps; ++s) {
    const std::size_t i = rng.index(n);
    std::size_t j = rng.index(n - 1);
    if (j >= i) ++j;
    const double t = rng.uniform();
    const double yi = y[i], yj = y[j];
    y[i] = t * yi + (1 - t) * yj;
    y[j] = (1 - t) * yi + t * yj;
  }
  return y;
}

// x ≺w y: mix, then decrease some entries.
RealVector weakly_below(const RealVector& y, Rng& rng) {
  RealVector x = doubly_stochastic_mix(y, rng);
  for (double& v : x)
    if (rng.bernoulli(0.5)) v -= std::abs(rng.normal());
  return x;
}

CMatrix scaled_complex(Index r, Index c, Rng& rng) { return random_complex(r, c, rng.next_u64()) * random_scale(rng); }

}  // namespace

bool SuiteReport::all_passed() const {
  return std::all_of(results.begin(), results.end(), [](const PropertyResult& r) { return r.failures == 0; });
}

SuiteReport property_suites(std::uint64_t seed, std::size_t trials, double tol, std::size_t max_n) {
  if (max_n < 1) throw ContractError("max_n must be at least 1");
  if (!(tol > 0)) throw ContractError("tolerance must be positive");
  const Index nmax = static_cast<Index>(max_n);
  auto dim = [nmax](Rng& rng) { return static_cast<Index>(rng.between(1, static_cast<std::size_t>(nmax))); };

  const std::vector<std::pair<std::string, Trial>> props = {
      {"lidskii",
       [&](Rng& rng, std::uint64_t) {
         const Index n = dim(rng);
         const CMatrix a = random_hermitian(n, rng.next_u64()).matrix() * random_scale(rng);
         const CMatrix b = random_hermitian(n, rng.next_u64()).matrix() * random_scale(rng);
         const RealVector la = eigvalsh(HermitianMatrix::from_full(a));
         const RealVector lb = eigvalsh(HermitianMatrix::from_full(b));
         const RealVector ld = eigvalsh(HermitianMatrix::from_full(a - b));
         RealVector diff(la.size());
         for (std::size_t i = 0; i < diff.size(); ++i) diff[i] = la[i] - lb[i];
         return worst_of({strongly_majorized(diff, ld, tol)});
       }},
      {"singular_sum",
       [&](Rng& rng, std::uint64_t) {
         const Index p = dim(rng), q = dim(rng);
         const CMatrix a = scaled_complex(p, q, rng), b = scaled_complex(p, q, rng);
         const RealVector rhs = add_padded(singular_values(a), singular_values(b));
         return worst_of({weakly_majorized(singular_values(a + b), rhs, tol),
                          weakly_majorized(singular_values(a - b), rhs, tol)});
       }},
      {"singular_product",
       [&](Rng& rng, std::uint64_t) {
         const Index p = dim(rng), q = dim(rng), r = dim(rng);
         const CMatrix a = scaled_complex(p, q, rng), b = scaled_complex(q, r, rng);
         const RealVector rhs = multiply_padded(singular_values(a), singular_values(b));
         return worst_of({weakly_majorized(singular_values(a * b), rhs, tol)});
       }},
      {"singular_norm_product",
       [&](Rng& rng, std::uint64_t) {
         const Index p = dim(rng), q = dim(rng), r = dim(rng);
         const CMatrix a = scaled_complex(p, q, rng), b = scaled_complex(q, r, rng);
         const RealVector sab = singular_values(a * b), sa = singular_values(a), sb = singular_values(b);
         const double na = sa.front(), nb = sb.front();
         const double scale = std::max(1.0, na * nb);
         const RealVector ra = pad_to(sa, std::max(sa.size(), sab.size()));
         const RealVector rb = pad_to(sb, std::max(sb.size(), sab.size()));
         double w = std::numeric_limits<double>::infinity();
         for (std::size_t i = 0; i < sab.size(); ++i) {
           w = std::min(w, (na * rb[i] - sab[i]) / scale);
           w = std::min(w, (ra[i] * nb - sab[i]) / scale);
         }
         return w;
       }},
      {"evsv",
       [&](Rng& rng, std::uint64_t) {
         const Index n = dim(rng);
         const HermitianMatrix a = HermitianMatrix::from_full(random_hermitian(n, rng.next_u64()).matrix() *
                                                              random_scale(rng));
         const RealVector s = singular_values(a.matrix());
         const double scale = std::max(1.0, s.front());
         double w = std::numeric_limits<double>::infinity();
         for (const HermitianMatrix& m : {a, a.negated()}) {
           const RealVector l = sort_desc(abs_vec(eigvalsh(m)));
           for (std::size_t i = 0; i < s.size(); ++i) w = std::min(w, -std::abs(l[i] - s[i]) / scale);
         }
         // Positive semidefinite case: s(GᴴG) = λ(GᴴG).
         const CMatrix g = scaled_complex(dim(rng), n, rng);
         const CMatrix gg = g.adjoint() * g;
         const RealVector lg = eigvalsh(HermitianMatrix::from_full(gg, 1e-10));
         const RealVector sg = singular_values(gg);
         const double gscale = std::max(1.0, sg.front());
         for (std::size_t i = 0; i < sg.size(); ++i) w = std::min(w, -std::abs(lg[i] - sg[i]) / gscale);
         // Equality holds exactly in theory; report it as a slack that is
         // compared against −tol like the majorization checks.
         return w;
       }},
      {"absd",
       [&](Rng& rng, std::uint64_t) {
         const std::size_t n = static_cast<std::size_t>(dim(rng));
         const double sc = random_scale(rng);
         const RealVector x = random_vector(rng, n, sc), y = random_vector(rng, n, sc);
         RealVector sum(n), dif(n);
         for (std::size_t i = 0; i < n; ++i) {
           sum[i] = std::abs(x[i] + y[i]);
           dif[i] = std::abs(x[i] - y[i]);
         }
         const RealVector rhs = add_padded(sort_desc(abs_vec(x)), sort_desc(abs_vec(y)));
         return worst_of({weakly_majorized(sum, rhs, tol), weakly_majorized(dif, rhs, tol)});
       }},
      {"abs",
       [&](Rng& rng, std::uint64_t) {
         const std::size_t n = static_cast<std::size_t>(dim(rng));
         const RealVector y = random_vector(rng, n, random_scale(rng));
         const RealVector x = doubly_stochastic_mix(y, rng);
         return worst_of({strongly_majorized(x, y, tol), weakly_majorized(abs_vec(x), abs_vec(y), tol)});
       }},
      {"gen",
       [&](Rng& rng, std::uint64_t) {
         const std::size_t n = static_cast<std::size_t>(dim(rng));
         const double sc = random_scale(rng);
         const RealVector y = random_vector(rng, n, sc), v = random_vector(rng, n, sc);
         const RealVector x = weakly_below(y, rng), u = weakly_below(v, rng);
         RealVector xu(n);
         for (std::size_t i = 0; i < n; ++i) xu[i] = x[i] + u[i];
         const RealVector mid = add_padded(sort_desc(x), sort_desc(u));
         const RealVector top = add_padded(sort_desc(y), sort_desc(v));
         return worst_of({weakly_majorized(x, y, tol), weakly_majorized(u, v, tol), strongly_majorized(xu, mid, tol),
                          weakly_majorized(mid, top, tol)});
       }},
  };

  SuiteReport rep;
  rep.seed = seed;
  for (std::size_t p = 0; p < props.size(); ++p) {
    PropertyResult res;
    res.name = props[p].first;
    for (std::size_t t = 0; t < trials; ++t) {
      const std::uint64_t s = derive_seed(derive_seed(seed, p), t);
      Rng rng(s);
      ++res.trials;
      double w;
      try {
        w = props[p].second(rng, s);
      } catch (const Error&) {
        w = -std::numeric_limits<double>::infinity();
      }
      res.worst_slack = std::min(res.worst_slack, w);
      if (w < -tol) ++res.failures;
    }
    rep.results.push_back(std::move(res));
  }
  return rep;
}

}  // namespace ritzmaj
