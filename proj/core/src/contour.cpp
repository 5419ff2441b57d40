#include "holocurve/contour.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "holocurve/errors.hpp"

namespace holocurve {

ContourSpec::ContourSpec(std::size_t m_nodes, double radius) : m_nodes_(m_nodes), radius_(radius) {
  if (m_nodes < 8) throw ParameterError("contour needs at least 8 nodes, got " + std::to_string(m_nodes));
  if (!(radius > 0.0) || !std::isfinite(radius)) throw ParameterError("contour radius must be finite and > 0");
}

Complex ContourSpec::unit_node(std::size_t j) const {
  const double angle = 2.0 * std::numbers::pi * static_cast<double>(j % m_nodes_) / static_cast<double>(m_nodes_);
  return {std::cos(angle), std::sin(angle)};
}

Complex ContourSpec::node(std::size_t j) const { return radius_ * unit_node(j); }

CVector circle_integral(const CircleIntegrand& g, const ContourSpec& spec) {
  const std::size_t m = spec.m_nodes();
  CVector sum;
  for (std::size_t j = 0; j < m; ++j) {
    const Complex omega = spec.unit_node(j);
    CVector value = g(spec.radius() * omega);
    if (!value.all_finite()) {
      std::ostringstream os;
      os << "non-finite integrand value at contour node " << j << " (zeta = " << spec.node(j) << ")";
      throw EvaluationError(os.str(), j);
    }
    value *= omega;
    if (j == 0) {
      sum = std::move(value);
    } else {
      sum += value;
    }
  }
  sum *= 1.0 / static_cast<double>(m);
  return sum;
}

namespace {

CVector nested_differential(const VectorMap& f, const CVector& x, std::span<const CVector> dirs,
                            const ContourSpec& spec) {
  if (dirs.empty()) return f(x);
  const CVector& u = dirs.front();
  const auto rest = dirs.subspan(1);
  const double r = spec.radius();
  // r * zeta^{-2} is the unit-circle weight omega^{-2} with the 1/r that
  // undoes sampling along r*u instead of u.
  return circle_integral(
      [&](Complex zeta) {
        CVector inner = nested_differential(f, x + zeta * u, rest, spec);
        inner *= r / (zeta * zeta);
        return inner;
      },
      spec);
}

}  // namespace

CVector kth_differential(const VectorMap& f, const CVector& x, std::span<const CVector> dirs,
                         const ContourSpec& spec) {
  if (dirs.size() > kMaxDifferentialOrder) {
    throw ParameterError("differential order capped at " + std::to_string(kMaxDifferentialOrder));
  }
  for (const auto& u : dirs) {
    if (u.size() != x.size()) throw ParameterError("direction dimension differs from the base point");
  }
  return nested_differential(f, x, dirs, spec);
}

double mean_value_check(const VectorMap& f, const CVector& x, const CVector& u, const ContourSpec& spec,
                        double norm_p) {
  const std::size_t m = spec.m_nodes();
  CVector mean(x.size());
  CVector harmonic1;
  CVector harmonic2;
  for (std::size_t j = 0; j < m; ++j) {
    const Complex omega = spec.unit_node(j);
    const CVector value = f(x + spec.radius() * omega * u);
    if (!value.all_finite()) throw EvaluationError("non-finite value in mean-value check", j);
    if (j == 0) {
      mean = value;
      harmonic1 = omega * value;
      harmonic2 = (omega * omega) * value;
    } else {
      mean += value;
      harmonic1 += omega * value;
      harmonic2 += (omega * omega) * value;
    }
  }
  const double scale = 1.0 / static_cast<double>(m);
  const double reproduction = norm(norm_p, scale * mean - f(x));
  const double negative = std::max(norm(norm_p, scale * harmonic1), norm(norm_p, scale * harmonic2));
  return std::max(reproduction, negative);
}

}  // namespace holocurve
