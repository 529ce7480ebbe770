#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "ritzmaj/errors.hpp"
#include "ritzmaj/majorize.hpp"
#include "ritzmaj/rng.hpp"
#include "ritzmaj/subspace.hpp"

using namespace ritzmaj;

namespace {

constexpr double kHalfPi = std::numbers::pi / 2;

OrthonormalBasis cols(Index n, std::vector<Index> c) { return OrthonormalBasis::coordinate(n, c); }

OrthonormalBasis random_basis(Index n, Index k, std::uint64_t seed) {
  return OrthonormalBasis(random_unitary(n, seed).matrix().leftCols(k));
}

}  // namespace

TEST_SUITE("subspace") {
  TEST_CASE("AngleVector validation") {
    CHECK_THROWS_AS(AngleVector(RealVector{0.1, 0.2}), ContractError);
    CHECK_THROWS_AS(AngleVector(RealVector{-0.1}), ContractError);
    CHECK_THROWS_AS(AngleVector(RealVector{2.0}), ContractError);
    CHECK(AngleVector::from_unsorted({0.1, 0.5}).values() == RealVector{0.5, 0.1});
  }

  TEST_CASE("identical subspaces have zero angles") {
    const auto x = random_basis(6, 3, 1);
    for (double t : principal_angles(x, x).values()) CHECK(t <= 1e-12);
  }

  TEST_CASE("the 4x4 example bases") {
    const auto x = cols(4, {0, 1}), y = cols(4, {2, 1});
    const auto t = principal_angles(x, y);
    CHECK(std::abs(t[0] - kHalfPi) <= 1e-12);
    CHECK(t[1] <= 1e-12);
    CHECK(gap(x, y) == doctest::Approx(1.0).epsilon(1e-15));
    const auto p = align_bases(x, y);
    CHECK(std::abs(p.c_diag[0]) <= 1e-15);
    CHECK(std::abs(p.c_diag[1] - 1.0) <= 1e-15);
    CHECK(p.cs_identity_error() <= 1e-15);
    const CMatrix sas = p.s_block.adjoint() * p.s_block;  // A₂₂ = I here
    CHECK(std::abs(sas(0, 0) - 1.0) <= 1e-15);
    CHECK(std::abs(sas(1, 1)) <= 1e-15);
    const auto s = sines_padded(p);
    CHECK(std::abs(s[0] - 1.0) <= 1e-15);
    CHECK(std::abs(s[1]) <= 1e-15);
  }

  TEST_CASE("sharp-example bases recover their angles") {
    const RealVector th{1.1, 0.4, 0.02};
    const Index m = 3;
    CMatrix y = CMatrix::Zero(2 * m, m);
    for (Index i = 0; i < m; ++i) {
      y(i, i) = std::cos(th[static_cast<std::size_t>(i)]);
      y(m + i, i) = std::sin(th[static_cast<std::size_t>(i)]);
    }
    const auto t = principal_angles(cols(2 * m, {0, 1, 2}), OrthonormalBasis(y));
    CHECK(oracle::max_abs_diff(t.values(), th) <= 1e-14);
  }

  TEST_CASE("tiny angle between two lines in R²") {
    const double theta = 1e-8;
    CMatrix x(2, 1), y(2, 1);
    x << 1, 0;
    y << std::cos(theta), std::sin(theta);
    const auto t = principal_angles(OrthonormalBasis(x), OrthonormalBasis(y));
    CHECK(std::abs(t[0] - theta) / theta <= 1e-6);
    CHECK(principal_angles_cosine_only(OrthonormalBasis(x), OrthonormalBasis(y))[0] == 0.0);
  }

  TEST_CASE("constructed pairs, symmetry and basis invariance") {
    Rng rng(31);
    for (unsigned t = 0; t < 60; ++t) {
      const Index k = static_cast<Index>(rng.between(1, 4));
      const Index n = 2 * k + static_cast<Index>(rng.between(0, 3));
      RealVector th(static_cast<std::size_t>(k));
      for (double& v : th) v = rng.bernoulli(0.3) ? std::pow(10.0, rng.uniform(-7, -2)) : rng.uniform(0, kHalfPi);
      const auto kp = oracle::pair_with_angles(n, th, 100 + t);
      const OrthonormalBasis x(kp.x), y(kp.y);
      const auto got = principal_angles(x, y);
      const RealVector want = sort_desc(th);
      for (std::size_t i = 0; i < want.size(); ++i)
        CHECK(std::abs(got[i] - want[i]) <= 1e-6 * want[i] + 1e-14);
      CHECK(oracle::max_abs_diff(principal_angles(y, x).values(), got.values()) <= 1e-12);
      const OrthonormalBasis xq(kp.x * random_unitary(k, t).matrix());
      CHECK(oracle::max_abs_diff(principal_angles(xq, y).values(), got.values()) <= 1e-12);

      const auto s = got.sines(), c = got.cosines();
      for (std::size_t i = 0; i < s.size(); ++i) CHECK(std::abs(s[i] * s[i] + c[i] * c[i] - 1.0) <= 1e-12);

      const auto p = align_bases(x, y);
      CHECK(p.cs_identity_error() <= 1e-10);
      RealVector from_c;
      for (double cd : p.c_diag) from_c.push_back(std::acos(cd));
      // arccos loses accuracy near zero, so compare at the 1e-7 level.
      CHECK(oracle::max_abs_diff(from_c, got.values()) <= 1e-7);
      CHECK(oracle::max_abs_diff(sines_padded(p), got.sines()) <= 1e-12);
      CHECK(std::abs(gap(x, y) - std::sin(got[0])) <= 1e-14);
    }
  }

  TEST_CASE("random pairs against an independent SVD of XᴴY") {
    for (unsigned t = 0; t < 30; ++t) {
      const auto x = random_basis(7, 3, derive_seed(1, t)), y = random_basis(7, 3, derive_seed(2, t));
      RealVector want;
      for (double c : oracle::singular_values(x.matrix().adjoint() * y.matrix())) want.push_back(std::acos(std::min(1.0, c)));
      CHECK(oracle::max_abs_diff(sort_desc(want), principal_angles(x, y).values()) <= 1e-7);
    }
  }

  TEST_CASE("full-dimensional subspaces have zero angles and an empty S") {
    const auto x = random_basis(3, 3, 1), y = random_basis(3, 3, 2);
    for (double t : principal_angles(x, y).values()) CHECK(t <= 1e-7);
    const auto p = align_bases(x, y);
    CHECK(p.s_block.size() == 0);
    CHECK(sines_padded(p) == RealVector(3, 0.0));
  }

  TEST_CASE("sines are padded with max(2k - n, 0) zeros") {
    const auto x = random_basis(4, 3, 5), y = random_basis(4, 3, 6);
    const auto s = sines_padded(align_bases(x, y));
    REQUIRE(s.size() == 3);
    CHECK(s[2] <= 1e-12);
    CHECK(oracle::max_abs_diff(s, principal_angles(x, y).sines()) <= 1e-12);
  }

  TEST_CASE("X = Y aligns to unit cosines") {
    const auto x = random_basis(5, 2, 3);
    const auto p = align_bases(x, x);
    for (double c : p.c_diag) CHECK(std::abs(c - 1.0) <= 1e-14);
    CHECK(p.s_block.cwiseAbs().maxCoeff() <= 1e-14);
  }

  TEST_CASE("perturb_subspace") {
    const auto x = random_basis(8, 3, 4);
    const auto y0 = perturb_subspace(x, AngleVector(RealVector{0, 0, 0}), 1);
    for (double t : principal_angles(x, y0).values()) CHECK(t <= 1e-12);

    Rng rng(8);
    for (int i = 0; i < 30; ++i) {
      const auto target = AngleVector::from_unsorted({rng.uniform(0, kHalfPi), rng.uniform(0, 1e-3), kHalfPi});
      const auto y = perturb_subspace(x, target, rng.next_u64());
      CHECK(oracle::max_abs_diff(principal_angles(x, y).values(), target.values()) <= 1e-10);
    }
    const auto small = random_basis(4, 3, 2);
    CHECK_THROWS_AS(perturb_subspace(small, AngleVector(RealVector{1, 1, 0}), 1), CapacityError);
    CHECK_NOTHROW(perturb_subspace(small, AngleVector(RealVector{1, 0, 0}), 1));
  }

  TEST_CASE("canonical directions give the sharp-example Y") {
    const Index m = 2;
    const auto x = cols(4, {0, 1});
    const CMatrix z = CMatrix::Identity(4, 4).rightCols(m);
    const AngleVector th(RealVector{0.9, 0.3});
    const auto y = perturb_subspace_along(x, th, z);
    CMatrix want = CMatrix::Zero(4, 2);
    want(0, 0) = std::cos(0.9);
    want(2, 0) = std::sin(0.9);
    want(1, 1) = std::cos(0.3);
    want(3, 1) = std::sin(0.3);
    CHECK((y.matrix() - want).cwiseAbs().maxCoeff() <= 1e-15);
  }
}
