#include "holocurve/chifun.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "holocurve/contour.hpp"
#include "holocurve/errors.hpp"
#include "poly.hpp"

namespace holocurve {
namespace {

using testing::random_complex;

/// Head entries of modulus up to `head_scale`, tail entries below 1/8.
CVector random_chi_input(std::mt19937_64& rng, std::size_t n, double head_scale) {
  std::uniform_int_distribution<std::size_t> head_len(0, std::min<std::size_t>(n, 8));
  const std::size_t head = head_len(rng);
  CVector x(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double r = i < head ? head_scale : 0.12;
    Complex z;
    do {
      z = random_complex(rng, r);
    } while (std::abs(z) >= r);
    x[i] = z;
  }
  return x;
}

CVector scaled_to_norm(CVector v, double target, double p) {
  const double len = norm(p, v);
  return len > 0 ? (target / len) * v : v;
}

TEST(Chi, Examples) {
  EXPECT_EQ(chi(CVector::zeros(8)), Complex(0, 0));
  EXPECT_NEAR(std::abs(chi(CVector::unit(8, 1, 0.5)) - 0.5), 0.0, 1e-16);
  EXPECT_NEAR(std::abs(chi(CVector::unit(8, 2, 0.5)) - 0.5), 0.0, 1e-16);
  EXPECT_EQ(chi(CVector::unit(8, 0, 7.0)), Complex(0, 0));
}

TEST(Dchi, Examples) {
  const CVector u{Complex(3, 1), Complex(0.25, -2), 5, 7};
  EXPECT_EQ(dchi(CVector::zeros(4), u), Complex(0.25, -2));
  EXPECT_EQ(dchi(CVector{1, 2, 3, 4}, CVector::zeros(4)), Complex(0, 0));
  EXPECT_NEAR(std::abs(dchi(CVector::unit(4, 2, 0.5), CVector::unit(4, 2)) - 2.0), 0.0, 1e-15);
}

TEST(Dchi, ComplexLinearInDirection) {
  std::mt19937_64 rng(1);
  for (int s = 0; s < 50; ++s) {
    const auto x = testing::random_vector(rng, 12, 0.9);
    const auto u = testing::random_vector(rng, 12);
    EXPECT_EQ(dchi(x, Complex(0, 1) * u), Complex(0, 1) * dchi(x, u));
  }
}

TEST(Dchi, AgreesWithContourDerivative) {
  std::mt19937_64 rng(2);
  const ContourSpec spec(64, 0.25);
  for (int s = 0; s < 100; ++s) {
    const auto x = random_chi_input(rng, 16, 0.8);
    const auto u = scaled_to_norm(testing::random_vector(rng, 16), 1.0, 2);
    const VectorMap f = [](const CVector& z) { return CVector{chi(z)}; };
    const std::vector<CVector> dirs{u};
    const Complex contour = kth_differential(f, x, dirs, spec)[0];
    const Complex exact = dchi(x, u);
    EXPECT_LT(std::abs(contour - exact), 1e-10 * std::max(1.0, std::abs(exact))) << s;
  }
}

TEST(Chi, TruncationIsMonotone) {
  std::mt19937_64 rng(3);
  for (int s = 0; s < 20; ++s) {
    const auto x = testing::random_vector(rng, 10, 0.9);
    CVector padded(18);
    for (std::size_t i = 0; i < 10; ++i) padded[i] = x[i];
    EXPECT_EQ(chi(x), chi(padded));
  }
}

TEST(Chi, DifferenceQuotientConvergesLinearly) {
  const CVector x{0, Complex(0.5, 0.1), Complex(-0.3, 0.4), 0.2, Complex(0, 0.6)};
  const CVector u{1, Complex(0.2, -1), 0.5, Complex(1, 1), -0.3};
  double prev = 0.0;
  for (int j = 6; j <= 14; ++j) {
    const double t = std::ldexp(1.0, -j);
    const double err = std::abs((chi(x + t * u) - chi(x)) / t - dchi(x, u));
    if (prev > 0) {
      EXPECT_NEAR(prev / err, 2.0, 0.1) << j;
    }
    prev = err;
    EXPECT_LE(err, chi_remainder(x, u, t) * (1 + 1e-9));
  }
}

TEST(Witness, TargetThirty) {
  const auto w = unboundedness_witness(30, 100);
  EXPECT_EQ(w.index, 83u);
  EXPECT_GT(w.value.real(), 30.0);
  EXPECT_NEAR(w.value.real(), 30.349, 1e-3);
  EXPECT_EQ(w.value.imag(), 0.0);
  for (double p : {1.0, 2.0, 4.0}) EXPECT_LT(norm(p, w.x), 1.0);
  // The largest admissible index sits near i / e.
  const double top = 99 * std::pow(98.0 / 99.0, 99);
  EXPECT_NEAR(top, 36.235, 1e-3);
}

TEST(Witness, TargetOne) {
  const auto w = unboundedness_witness(1, 8);
  EXPECT_LE(w.index, 7u);
  EXPECT_GT(w.value.real(), 1.0);
  EXPECT_NEAR(std::abs(chi(CVector::unit(8, 4, 0.75)) - 1.265625), 0.0, 1e-15);
}

TEST(Witness, UnreachableSuggestsDimension) {
  try {
    unboundedness_witness(1e6, 100);
    FAIL();
  } catch (const WitnessUnreachable& e) {
    EXPECT_EQ(e.suggested_dimension(), 2718283u);
  }
}

TEST(TailCutoff, LeastValidIndex) {
  EXPECT_EQ(tail_cutoff(CVector::zeros(5)), 0u);
  EXPECT_EQ(tail_cutoff(CVector{0.5, 0, 0.2, 0.1, 0}), 3u);
  EXPECT_EQ(tail_cutoff(CVector{0, 0, 0, 0, 0.125}), 5u);
  EXPECT_EQ(tail_cutoff(CVector{0.5, 0}, CVector{0, 0.3}), 2u);
}

TEST(ContinuityBound, TailOnlyCase) {
  CVector u(16);
  u[1] = 0.05;
  u[2] = Complex(0, 0.05);
  u[5] = 0.07;
  u = scaled_to_norm(u, 0.1, 2);
  const auto c = continuity_bound_check(CVector::zeros(16), u);
  EXPECT_EQ(c.cutoff, 0u);
  EXPECT_NEAR(c.lhs, std::abs(chi(u)), 1e-15);
  EXPECT_NEAR(c.rhs, 0.1 * 8.0, 1e-15);
  EXPECT_TRUE(c.ok);
}

TEST(ContinuityBound, ZeroPerturbation) {
  const auto c = continuity_bound_check(CVector{0, 0.9, 0.5, 0.01}, CVector::zeros(4));
  EXPECT_EQ(c.lhs, 0.0);
  EXPECT_TRUE(c.ok);
}

TEST(ContinuityBound, RejectsLargePerturbation) {
  EXPECT_THROW(continuity_bound_check(CVector::zeros(3), CVector{0, 0.2, 0}), ParameterError);
}

TEST(ContinuityBound, FuzzedSamplesHold) {
  std::mt19937_64 rng(500);
  std::uniform_real_distribution<double> size(0.0, 0.1249);
  for (double p : {1.0, 2.0}) {
    for (int s = 0; s < 500; ++s) {
      const auto x = random_chi_input(rng, 32, 1.5);
      const auto u = scaled_to_norm(testing::random_vector(rng, 32), size(rng), p);
      const auto c = continuity_bound_check(x, u, p);
      EXPECT_TRUE(c.ok) << "p=" << p << " sample " << s << ": " << c.lhs << " > " << c.rhs;
    }
  }
}

TEST(RemainderBound, ZeroDirection) {
  const auto r = remainder_bound_check(CVector{0, 0.9, 0.5}, CVector::zeros(3), 0.1);
  EXPECT_EQ(r.worst_ratio, 0.0);
  EXPECT_TRUE(r.ok);
}

TEST(RemainderBound, OnlyIndexZero) {
  const auto r = remainder_bound_check(CVector{0.7}, CVector{Complex(3, 1)}, 1e-3);
  EXPECT_EQ(r.worst_ratio, 0.0);
  EXPECT_TRUE(r.ok);
}

TEST(RemainderBound, DeltaFormula) {
  const CVector x{0, 0.5, 0.05};
  const CVector u{0, 0, 0.01};
  const auto r = remainder_bound_check(x, u, 0.5);
  const double m = 1.0 + norm(2, x) + norm(2, u);
  EXPECT_EQ(r.cutoff, 2u);
  EXPECT_NEAR(r.delta, 0.5 / (m * m * (8 * m * m + 128 * 3)), 1e-15);
}

TEST(RemainderBound, FuzzedSamplesHold) {
  std::mt19937_64 rng(200);
  std::uniform_real_distribution<double> log_eps(-3, 0);
  for (int s = 0; s < 200; ++s) {
    const auto x = random_chi_input(rng, 16, 1.5);
    const auto u = random_chi_input(rng, 16, 2.0);
    const double eps = std::pow(10.0, log_eps(rng));
    const auto r = remainder_bound_check(x, u, eps);
    EXPECT_TRUE(r.ok) << "sample " << s << ": ratio " << r.worst_ratio;
    EXPECT_GT(r.delta, 0.0);
    EXPECT_LE(r.delta, 1.0);
  }
}

}  // namespace
}  // namespace holocurve
