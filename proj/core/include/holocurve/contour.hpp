#pragma once

// Trapezoid quadrature on circles, normalized so that
//   circle_integral(g) ~ int_0^1 g(r e^{2 pi i s}) e^{2 pi i s} ds,
// which makes the zeta^{-1} coefficient come out with weight one and turns
// the Cauchy formula into plain averages.

#include <cstddef>
#include <functional>
#include <span>

#include "holocurve/lincomplex.hpp"

namespace holocurve {

inline constexpr std::size_t kDefaultContourNodes = 64;
inline constexpr std::size_t kMaxDifferentialOrder = 3;

class ContourSpec {
 public:
  explicit ContourSpec(std::size_t m_nodes = kDefaultContourNodes, double radius = 0.5);

  std::size_t m_nodes() const noexcept { return m_nodes_; }
  double radius() const noexcept { return radius_; }

  ContourSpec with_radius(double radius) const { return ContourSpec(m_nodes_, radius); }
  ContourSpec with_nodes(std::size_t m) const { return ContourSpec(m, radius_); }

  /// zeta_j = radius * exp(2 pi i j / m).
  Complex node(std::size_t j) const;
  /// exp(2 pi i j / m), the unit-circle point of node j.
  Complex unit_node(std::size_t j) const;

 private:
  std::size_t m_nodes_;
  double radius_;
};

using CircleIntegrand = std::function<CVector(Complex)>;
using VectorMap = std::function<CVector(const CVector&)>;

/// (1/m) sum_j g(zeta_j) * (zeta_j / radius). Throws EvaluationError naming
/// the node when g returns a non-finite entry.
CVector circle_integral(const CircleIntegrand& g, const ContourSpec& spec);

/// k-th differential d^k f(x)[dirs...] from the iterated Cauchy formula with
/// weights prod zeta_i^{-2}; every zeta_i runs over the circle of the spec's
/// radius, and the radius powers cancel so the value is radius independent
/// for holomorphic f. k = dirs.size() <= 3; k = 0 returns f(x).
CVector kth_differential(const VectorMap& f, const CVector& x, std::span<const CVector> dirs,
                         const ContourSpec& spec);

/// Holomorphy audit along the complex line x + zeta u, |zeta| = radius.
/// Returns the largest of
///   |mean f(x + zeta u) - f(x)|                (mean-value reproduction)
///   |coefficient of zeta^{-1}|, |... zeta^{-2}| (negative harmonics)
/// all of which vanish for holomorphic f. A harmonic but non-holomorphic map
/// such as conj passes the first test and fails the second.
double mean_value_check(const VectorMap& f, const CVector& x, const CVector& u, const ContourSpec& spec,
                        double norm_p = kDefaultNormP);

}  // namespace holocurve
