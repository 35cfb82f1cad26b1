#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "ima/contrast.hpp"
#include "ima/conformal.hpp"
#include "ima/errors.hpp"
#include "ima/grid_map.hpp"
#include "ima/mixing.hpp"
#include "ima/two_piece.hpp"

using namespace ima;

namespace {

ErrorKind kind_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no ima::Error thrown";
  return ErrorKind::kValidation;
}

Vector vec(std::initializer_list<double> xs) {
  Vector v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v(i++) = x;
  return v;
}

}  // namespace

TEST(SmoothStep, DefinitionValues) {
  const double eps = 0.05;
  EXPECT_EQ(smooth_step(0.0, eps), 0.5);
  EXPECT_EQ(smooth_step(-eps, eps), 0.0);
  EXPECT_NEAR(smooth_step(eps, eps), 1.0, 1e-15);
  EXPECT_EQ(smooth_step(-1.0, eps), 0.0);
  EXPECT_EQ(smooth_step(1.0, eps), 1.0);
  EXPECT_EQ(kind_of([] { smooth_step(0.1, 0.0); }), ErrorKind::kDomainError);
}

TEST(SmoothStep, SymmetryAndDerivative) {
  const double eps = 0.02;
  for (int i = 0; i <= 1000; ++i) {
    const double s = -eps + 2 * eps * i / 1000.0;
    EXPECT_NEAR(smooth_step(s, eps) + smooth_step(-s, eps), 1.0, 1e-14);
    if (std::abs(s) < eps - 1e-5) {
      const double h = 1e-7;
      const double fd = (smooth_step(s + h, eps) - smooth_step(s - h, eps)) / (2 * h);
      EXPECT_NEAR(smooth_step_derivative(s, eps), fd, 1e-5);
    }
  }
  EXPECT_NEAR(smooth_step_derivative(0.0, eps), std::numbers::pi / (4 * eps), 1e-12);
  EXPECT_EQ(smooth_step_derivative(eps * 1.5, eps), 0.0);
}

TEST(LinearMap, Basics) {
  Matrix a(3, 2);
  a << 1, 2, 3, 4, 5, 6;
  const LinearMap f(a);
  EXPECT_EQ(f.eval(Vector::Zero(2)), Vector::Zero(3));
  EXPECT_EQ(f.jacobian(vec({0.3, -2})), a);
  EXPECT_TRUE(jacobian_fd(f, vec({0.1, 0.2}), 1e-3).isApprox(a, 1e-10));
  EXPECT_EQ(kind_of([&] { f.eval(Vector::Zero(3)); }), ErrorKind::kOutOfDomain);
}

TEST(GridMap, PiecesAndDomain) {
  EXPECT_EQ(grid_pieces(1.0), 2);
  EXPECT_EQ(grid_pieces(0.5), 3);
  EXPECT_EQ(grid_pieces(0.1), 11);
  EXPECT_EQ(grid_pieces(0.3), 5);
  const auto sampler = SphericalSampler::standard_gaussian(4);
  EXPECT_EQ(kind_of([&] { sample_grid_map(2, 4, 0.2, sampler, 0.05, 1); }), ErrorKind::kDomainError);
  const auto map = sample_grid_map(2, 4, 0.5, sampler, 0.01, 1);
  EXPECT_EQ(kind_of([&] { map.eval(vec({0.5, 1.2})); }), ErrorKind::kOutOfDomain);
}

TEST(GridMap, SinglePieceInterior) {
  Matrix j1(2, 1), j2(2, 1);
  j1 << 1.5, -0.5;
  j2 << 0.3, 2.0;
  const SmoothGridMap map(1.0, 0.01, {j1, j2});
  for (double s = 0.011; s <= 0.99; s += 0.0137) {
    const Vector expected = j1 * s;
    EXPECT_LT((map.eval(vec({s})) - expected).cwiseAbs().maxCoeff(), 1e-15);
  }
}

TEST(GridMap, SharpMapIsContinuousAtKnots) {
  const auto map = sample_grid_map(2, 6, 0.25, SphericalSampler::standard_gaussian(6), 0.0, 4);
  for (int t = 1; t <= 3; ++t) {
    const double knot = 0.25 * t;
    double prev = 1.0;
    for (double h : {1e-2, 1e-4, 1e-6, 1e-8}) {
      const double gap = (map.eval(vec({knot - h, 0.4})) - map.eval(vec({knot + h, 0.4}))).norm();
      EXPECT_LT(gap, prev);
      prev = gap;
    }
    EXPECT_LT(prev, 1e-6);
    EXPECT_EQ(kind_of([&] { map.jacobian(vec({knot, 0.4})); }), ErrorKind::kOnKnot);
  }
}

TEST(GridMap, InteriorJacobianSelectsBlock) {
  const double delta = 0.25, eps = 0.02;
  const auto map = sample_grid_map(3, 7, delta, SphericalSampler::standard_gaussian(7), eps, 9);
  Rng rng(2);
  int checked = 0;
  while (checked < 100) {
    Vector s(3);
    for (int k = 0; k < 3; ++k) s(k) = rng.uniform_open();
    if (map.in_boundary_region(s)) continue;
    ++checked;
    const Matrix j = map.jacobian(s);
    for (int k = 0; k < 3; ++k) {
      const int b = static_cast<int>(std::ceil(s(k) / delta));  // 1-based piece
      EXPECT_LT((j.col(k) - map.blocks()[static_cast<std::size_t>(b - 1)].col(k)).norm(), 1e-12);
    }
  }
}

TEST(GridMap, KnotColumnIsAverageOfNeighbours) {
  const double delta = 0.25;
  const auto map = sample_grid_map(2, 5, delta, SphericalSampler::standard_gaussian(5), 0.01, 13);
  for (int t = 1; t <= 3; ++t) {
    const Vector s = vec({t * delta, 0.6});
    const Matrix j = map.jacobian(s);
    const Vector expected =
        0.5 * (map.blocks()[static_cast<std::size_t>(t - 1)].col(0) + map.blocks()[static_cast<std::size_t>(t)].col(0));
    EXPECT_LT((j.col(0) - expected).cwiseAbs().maxCoeff(), 1e-8);
    EXPECT_LT((jacobian_fd(map, s, 1e-6).col(0) - expected).cwiseAbs().maxCoeff(), 1e-4);
  }
}

TEST(GridMap, CoordinateSeparable) {
  const auto map = sample_grid_map(2, 6, 0.5, SphericalSampler::standard_gaussian(6), 0.02, 3);
  Rng rng(1);
  for (int i = 0; i < 200; ++i) {
    const Vector s = vec({rng.uniform_open(), rng.uniform_open()});
    const Vector sum = map.coordinate_value(0, s(0)) + map.coordinate_value(1, s(1));
    EXPECT_LT((map.eval(s) - sum).norm(), 1e-13);
  }
}

TEST(GridMap, AnalyticJacobianMatchesFiniteDifferences) {
  for (double eps : {0.01, 0.03}) {
    const auto map = sample_grid_map(2, 9, 0.2, SphericalSampler::standard_gaussian(9), eps, 21);
    Rng rng(5);
    for (int i = 0; i < 100; ++i) {
      const Vector s = vec({rng.uniform(0.001, 0.999), rng.uniform(0.001, 0.999)});
      EXPECT_LT((map.jacobian(s) - jacobian_fd(map, s, 1e-6)).cwiseAbs().maxCoeff(), 1e-4);
    }
  }
}

TEST(GridMap, BoundaryMeasure) {
  const auto sampler = SphericalSampler::standard_gaussian(16);
  const auto map = sample_grid_map(2, 16, 0.5, sampler, 0.01, 1);
  // knots 0, 0.5, 1 with windows clipped to [0,1]: 0.01 + 0.02 + 0.01
  EXPECT_NEAR(map.boundary_measure_per_axis(), 0.04, 1e-15);
  // mpmath: 1 - 0.96^2
  EXPECT_NEAR(map.boundary_probability_uniform(), 0.0784, 1e-15);
  const auto thirds = sample_grid_map(1, 16, 0.3, sampler, 0.05, 1);
  // knots 0, .3, .6, .9 inside [0,1]: 0.05 + 0.1 + 0.1 + 0.1
  EXPECT_NEAR(thirds.boundary_measure_per_axis(), 0.35, 1e-12);
}

TEST(GridMap, WarnsWhenColumnsCannotBeIndependent) {
  const auto small = sample_grid_map(2, 4, 0.5, SphericalSampler::standard_gaussian(4), 0.01, 1);
  EXPECT_FALSE(small.warnings().empty());
  const auto large = sample_grid_map(2, 16, 0.5, SphericalSampler::standard_gaussian(16), 0.01, 1);
  EXPECT_TRUE(large.warnings().empty());
}

TEST(TwoPiece, LinearDegenerateMode) {
  Matrix j0(3, 2);
  j0 << 1, 0, 0, 1, 1, 1;
  const auto f = make_two_piece(j0, 1, j0.col(1), 0.2, 0.0);
  EXPECT_TRUE(f.is_linear());
  for (double s1 : {-1.0, 0.2, 3.0}) {
    const Vector s = vec({0.5, s1});
    EXPECT_LT((f.eval(s) - j0 * s).norm(), 1e-15);
  }
  EXPECT_EQ(kind_of([&] { make_two_piece(j0, 1, Vector(j0.col(0) * 2.0), 0.2, 0.0); }), ErrorKind::kRankDeficient);
}

TEST(TwoPiece, ContinuousAndPiecewiseJacobian) {
  const auto f = sample_two_piece(3, 6, 1, 0.3, 0.0, SphericalSampler::standard_gaussian(6), 8);
  EXPECT_FALSE(f.is_linear());
  const Vector at = vec({0.1, 0.3, -0.4});
  for (double h : {1e-3, 1e-6, 1e-9}) {
    Vector lo = at, hi = at;
    lo(1) -= h;
    hi(1) += h;
    EXPECT_LT((f.eval(lo) - f.eval(hi)).norm(), 10 * h * (f.j0().norm() + f.j1().norm()));
  }
  EXPECT_EQ(f.jacobian(vec({0, 0.1, 0})), f.j0());
  EXPECT_EQ(f.jacobian(vec({0, 0.5, 0})), f.j1());
  EXPECT_EQ(kind_of([&] { f.jacobian(at); }), ErrorKind::kOnKnot);
  EXPECT_EQ((f.j0() - f.j1()).colwise().norm().cwiseSign().sum(), 1.0);
}

TEST(TwoPiece, SmoothedJacobianMatchesFiniteDifferences) {
  const auto f = sample_two_piece(2, 5, 0, 0.5, 0.02, SphericalSampler::standard_gaussian(5), 3);
  for (double s0 = 0.45; s0 < 0.55; s0 += 0.0031) {
    const Vector s = vec({s0, 0.2});
    EXPECT_LT((f.jacobian(s) - jacobian_fd(f, s, 1e-6)).cwiseAbs().maxCoeff(), 1e-4);
  }
}

TEST(Conformal, SimilarityEmbedding) {
  Rng rng(3);
  const Matrix embed = random_orthonormal_columns(5, 2, rng);
  const Matrix rot = random_orthogonal(2, rng);
  const ConformalMap f(embed, {Similarity{2.5, rot, vec({0.1, -0.2})}});
  const Vector s = vec({0.7, 0.3});
  EXPECT_LT((f.eval(s) - embed * (2.5 * rot * s + vec({0.1, -0.2}))).norm(), 1e-14);
  EXPECT_LT((f.jacobian(s) - 2.5 * embed * rot).cwiseAbs().maxCoeff(), 1e-8);
  EXPECT_LE(conformality_defect(f, s), 1e-12);
  EXPECT_NEAR(f.conformal_factor(s), 2.5, 1e-15);
  EXPECT_NEAR(local_ima_contrast(f.jacobian(s)), 0.0, 1e-12);
}

TEST(Conformal, IdentityInnerIsEmbedding) {
  Rng rng(4);
  const Matrix embed = random_orthonormal_columns(4, 3, rng);
  const ConformalMap f(embed, {});
  const Vector s = vec({1, 2, 3});
  EXPECT_LT((f.eval(s) - embed * s).norm(), 1e-14);
}

TEST(Conformal, InversionFactor) {
  Rng rng(5);
  const ConformalMap f(random_orthonormal_columns(3, 2, rng), {Inversion{vec({0, 0})}});
  const Vector s = vec({2.0 * std::cos(0.4), 2.0 * std::sin(0.4)});
  EXPECT_NEAR(f.conformal_factor(s), 0.25, 1e-15);
  EXPECT_NEAR(f.jacobian(s).col(0).norm(), 0.25, 1e-12);
  EXPECT_LE(conformality_defect(f, s), 1e-8);
  EXPECT_LT((f.jacobian(s) - jacobian_fd(f, s, 1e-6)).cwiseAbs().maxCoeff(), 1e-8);
  EXPECT_EQ(kind_of([&] { f.eval(vec({1e-4, 0})); }), ErrorKind::kNearPole);
}

TEST(Conformal, CompositionStaysConformal) {
  Rng rng(6);
  const ConformalMap f(random_orthonormal_columns(6, 3, rng),
                       {Similarity{0.7, random_orthogonal(3, rng), vec({0.2, 0.1, -0.3})}, Inversion{vec({1, 1, 1})}});
  for (int i = 0; i < 100; ++i) {
    const Vector s = rng.normal_vector(3);
    EXPECT_LE(conformality_defect(f, s), 1e-8);
    const double lambda = f.conformal_factor(s);
    EXPECT_NEAR(f.jacobian(s).col(0).norm(), lambda, 1e-10 * std::max(1.0, lambda));
  }
}

TEST(Conformal, RejectsNonOrthonormalEmbedding) {
  Matrix e(3, 2);
  e << 1, 1, 0, 1, 0, 0;
  EXPECT_THROW(ConformalMap(e, {}), Error);
}

TEST(Injectivity, LinearFullRankHasNoViolations) {
  Matrix a(4, 2);
  a << 1, 0, 0, 1, 1, -1, 2, 0.5;
  const auto r = injectivity_probe(LinearMap(a), 10000, 1, Box{Vector::Constant(2, -1), Vector::Constant(2, 1)});
  EXPECT_EQ(r.pairs, 10000u);
  EXPECT_EQ(r.violations, 0u);
  EXPECT_GT(r.guided_pairs, 0u);
}

TEST(Injectivity, SampledGridMapHasNoViolations) {
  const auto map = sample_grid_map(2, 20, 0.25, SphericalSampler::standard_gaussian(20), 0.01, 77);
  EXPECT_EQ(injectivity_probe(map, 10000, 2).violations, 0u);
}

TEST(Injectivity, DuplicateColumnsAreFlagged) {
  Matrix a(3, 2);
  a << 1, 1, 2, 2, -1, -1;
  const auto r = injectivity_probe(LinearMap(a), 1000, 3, Box{Vector::Zero(2), Vector::Ones(2)});
  EXPECT_GT(r.violations, 0u);
}
