#include "holocurve/contour.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "holocurve/errors.hpp"
#include "poly.hpp"

namespace holocurve {
namespace {

using testing::max_abs;
using testing::max_abs_diff;
using testing::PolyMap;
using testing::random_poly_map;
using testing::random_vector;

VectorMap as_map(const PolyMap& p) {
  return [p](const CVector& z) { return p.evaluate(0.0, z); };
}

TEST(ContourSpec, Validation) {
  EXPECT_THROW(ContourSpec(4, 1.0), ParameterError);
  EXPECT_THROW(ContourSpec(16, 0.0), ParameterError);
  EXPECT_THROW(ContourSpec(16, -1.0), ParameterError);
  EXPECT_NO_THROW(ContourSpec(8, 1e-6));
}

TEST(CircleIntegral, PicksInverseCoefficient) {
  const ContourSpec spec(32, 1.0);
  const auto out = circle_integral([](Complex z) { return CVector{2.0 / z}; }, spec);
  EXPECT_NEAR(std::abs(out[0] - 2.0), 0.0, 1e-15);
}

TEST(CircleIntegral, ConstantIntegratesToZero) {
  const auto out = circle_integral([](Complex) { return CVector{Complex(3, -1), 1}; }, ContourSpec(32, 0.7));
  EXPECT_LT(max_abs(out), 1e-15);
}

TEST(CircleIntegral, MonomialOrthogonality) {
  const ContourSpec spec(32, 1.0);
  for (int k = -15; k <= 15; ++k) {
    const auto out = circle_integral([k](Complex z) { return CVector{std::pow(z, k)}; }, spec);
    const Complex expected = k == -1 ? 1.0 : 0.0;
    EXPECT_LT(std::abs(out[0] - expected), 1e-14) << "k = " << k;
  }
}

TEST(CircleIntegral, NonFiniteValueReportsNode) {
  const ContourSpec spec(16, 1.0);
  try {
    circle_integral(
        [&](Complex z) { return CVector{std::abs(z - spec.node(5)) < 1e-12 ? Complex(NAN, 0) : z}; }, spec);
    FAIL() << "expected EvaluationError";
  } catch (const EvaluationError& e) {
    EXPECT_EQ(e.node(), 5u);
  }
}

TEST(KthDifferential, SquareFirstDerivative) {
  const auto f = [](const CVector& z) { return CVector{z[0] * z[0]}; };
  const std::vector<CVector> dirs{CVector{1}};
  EXPECT_NEAR(std::abs(kth_differential(f, CVector{1}, dirs, ContourSpec())[0] - 2.0), 0.0, 1e-14);
}

TEST(KthDifferential, CubeSecondDerivative) {
  const auto f = [](const CVector& z) { return CVector{z[0] * z[0] * z[0]}; };
  const std::vector<CVector> dirs{CVector{1}, CVector{1}};
  EXPECT_LT(std::abs(kth_differential(f, CVector{0}, dirs, ContourSpec())[0]), 1e-14);
  EXPECT_NEAR(std::abs(kth_differential(f, CVector{1}, dirs, ContourSpec())[0] - 6.0), 0.0, 1e-13);
}

TEST(KthDifferential, OrderZeroIsEvaluation) {
  const auto f = [](const CVector& z) { return CVector{std::exp(z[0])}; };
  EXPECT_EQ(kth_differential(f, CVector{0.3}, {}, ContourSpec())[0], std::exp(Complex(0.3)));
}

TEST(KthDifferential, OrderAboveCapRejected) {
  const auto f = [](const CVector& z) { return z; };
  const std::vector<CVector> dirs(4, CVector{1});
  EXPECT_THROW(kth_differential(f, CVector{0}, dirs, ContourSpec()), ParameterError);
}

TEST(KthDifferential, DirectionDimensionChecked) {
  const auto f = [](const CVector& z) { return z; };
  const std::vector<CVector> dirs{CVector{1, 0}};
  EXPECT_THROW(kth_differential(f, CVector{0}, dirs, ContourSpec()), ParameterError);
}

TEST(KthDifferential, MatchesSymbolicDerivatives) {
  std::mt19937_64 rng(2024);
  for (int s = 0; s < 60; ++s) {
    const std::size_t n = 1 + s % 3;
    const std::size_t k = 1 + s % 3;
    const auto p = random_poly_map(rng, n, 5, 6, 0, 1.0, true);
    const auto x = random_vector(rng, n);
    std::vector<CVector> dirs;
    for (std::size_t j = 0; j < k; ++j) dirs.push_back(random_vector(rng, n));
    const auto exact = p.differential(0.0, x, dirs);
    const auto got = kth_differential(as_map(p), x, dirs, ContourSpec(64, 0.5));
    EXPECT_LT(max_abs_diff(got, exact), 1e-10 * std::max(1.0, max_abs(exact))) << "sample " << s;
  }
}

TEST(KthDifferential, MultilinearAndSymmetric) {
  std::mt19937_64 rng(77);
  const ContourSpec spec(32, 0.5);
  for (int s = 0; s < 24; ++s) {
    const std::size_t n = 1 + s % 4;
    const std::size_t k = 1 + s % 3;
    const auto f = as_map(random_poly_map(rng, n, 4, 5));
    const auto x = random_vector(rng, n, 0.5);
    std::vector<CVector> dirs;
    for (std::size_t j = 0; j < k; ++j) dirs.push_back(random_vector(rng, n));
    const auto base = kth_differential(f, x, dirs, spec);
    const double scale = std::max(1.0, max_abs(base));

    // additivity and homogeneity in the first slot
    const auto w = random_vector(rng, n);
    const Complex alpha = testing::random_complex(rng, 2.0);
    auto mixed = dirs;
    mixed[0] = alpha * dirs[0] + w;
    auto only_w = dirs;
    only_w[0] = w;
    const auto combo = alpha * base + kth_differential(f, x, only_w, spec);
    EXPECT_LT(max_abs_diff(kth_differential(f, x, mixed, spec), combo), 1e-10 * scale);

    // symmetry under reversal of the directions
    auto reversed = dirs;
    std::reverse(reversed.begin(), reversed.end());
    EXPECT_LT(max_abs_diff(kth_differential(f, x, reversed, spec), base), 1e-10 * scale);
  }
}

TEST(KthDifferential, CauchyRiemann) {
  std::mt19937_64 rng(3);
  for (int s = 0; s < 20; ++s) {
    const auto f = as_map(random_poly_map(rng, 2, 5, 5));
    const auto x = random_vector(rng, 2, 0.5);
    const auto u = random_vector(rng, 2);
    const std::vector<CVector> d1{u}, di{Complex(0, 1) * u};
    const auto a = kth_differential(f, x, d1, ContourSpec());
    const auto b = kth_differential(f, x, di, ContourSpec());
    EXPECT_LT(max_abs_diff(b, Complex(0, 1) * a), 1e-12 * std::max(1.0, max_abs(a)));
  }
}

TEST(KthDifferential, RadiusInvariance) {
  std::mt19937_64 rng(8);
  for (int s = 0; s < 20; ++s) {
    const auto f = [](const CVector& z) { return CVector{std::exp(z[0]) * std::sin(z[1]), z[0] * z[1]}; };
    const auto x = random_vector(rng, 2, 0.5);
    const std::vector<CVector> dirs{random_vector(rng, 2), random_vector(rng, 2)};
    const auto a = kth_differential(f, x, dirs, ContourSpec(64, 0.5));
    const auto b = kth_differential(f, x, dirs, ContourSpec(64, 0.25));
    EXPECT_LT(max_abs_diff(a, b), 1e-10);
  }
}

TEST(KthDifferential, SpectralConvergenceOnPolynomials) {
  std::mt19937_64 rng(19);
  for (int degree = 2; degree <= 10; ++degree) {
    const auto p = random_poly_map(rng, 1, degree, 8, 0, 1.0, true);
    const CVector x{0.3};
    const std::vector<CVector> dirs{CVector{1}};
    const auto exact = p.differential(0.0, x, dirs);
    const auto got = kth_differential(as_map(p), x, dirs, ContourSpec(static_cast<std::size_t>(std::max(8, degree + 3)), 0.5));
    EXPECT_LT(max_abs_diff(got, exact), 1e-13 * std::max(1.0, max_abs(exact))) << "degree " << degree;
  }
}

TEST(MeanValueCheck, LinearMapsReproduceExactly) {
  const auto f = [](const CVector& z) { return CVector{Complex(2, 1) * z[0] + 3.0 * z[1], z[1] - 1.0}; };
  std::mt19937_64 rng(1);
  for (int s = 0; s < 10; ++s) {
    EXPECT_LT(mean_value_check(f, random_vector(rng, 2), random_vector(rng, 2), ContourSpec()), 1e-14);
  }
}

TEST(MeanValueCheck, TruncatedExponentialSeries) {
  const auto f = [](const CVector& z) {
    Complex sum = 0.0, term = 1.0;
    for (int j = 0; j <= 10; ++j) {
      sum += term;
      term *= z[0] / static_cast<double>(j + 1);
    }
    return CVector{sum};
  };
  EXPECT_LT(mean_value_check(f, CVector{0.3}, CVector{1}, ContourSpec(32, 0.5)), 1e-13);
}

TEST(MeanValueCheck, ConjugationIsFlagged) {
  const auto f = [](const CVector& z) { return CVector{std::conj(z[0])}; };
  for (double r : {0.25, 0.5, 1.0}) {
    const double residual = mean_value_check(f, CVector{0}, CVector{1}, ContourSpec(64, r));
    EXPECT_NEAR(residual, r, 1e-12);
  }
}

}  // namespace
}  // namespace holocurve
