#include "holocurve/superpose.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

#include "holocurve/errors.hpp"
#include "holocurve/parallel.hpp"

namespace holocurve {

namespace {

void require_same_grid(const Curve& a, const Curve& b) {
  if (!(a.grid() == b.grid())) throw ParameterError("curves live on different grids");
  if (a.dimension() != b.dimension()) throw ParameterError("curve dimensions differ");
}

void require_unit_fraction(const ContourSpec& spec) {
  if (spec.radius() > 1.0) {
    throw ParameterError("superposition contours use radius as a fraction of delta0 and need radius <= 1");
  }
}

Curve map_nodes(const Curve& like, const std::function<CVector(std::size_t)>& body) {
  std::vector<CVector> out(like.size());
  parallel_for(like.size(), [&](std::size_t k) { out[k] = body(k); });
  return Curve(like.grid(), std::move(out));
}

}  // namespace

Curve superpose(const Field& x, const Curve& y) {
  if (y.dimension() != x.dimension()) throw ParameterError("curve and field dimensions differ");
  return map_nodes(y, [&](std::size_t k) { return eval_field(x, y.grid()[k], y[k]); });
}

double safety_radius(const Curve& y, const Box& domain) {
  double least = std::numeric_limits<double>::infinity();
  std::size_t where = 0;
  for (std::size_t k = 0; k < y.size(); ++k) {
    const double margin = domain.margin(y[k]);
    if (margin < least) {
      least = margin;
      where = k;
    }
  }
  if (!(least > 0.0)) {
    std::ostringstream os;
    os << "curve graph reaches the domain boundary at t = " << y.grid()[where] << " (margin " << least << ")";
    throw DegenerateDomainError(os.str());
  }
  return kSafetyFactor * least;
}

Curve partial2_apply(const Field& x, const Curve& y, const Curve& v, const ContourSpec& spec, double delta0_scale) {
  require_same_grid(y, v);
  require_unit_fraction(spec);
  if (!(delta0_scale > 0.0 && delta0_scale <= 1.0)) throw ParameterError("delta0_scale must lie in (0, 1]");
  const double p = x.domain().norm_p();
  const double delta0 = delta0_scale * safety_radius(y, x.domain()) / std::max(1.0, sup_norm(v, p));
  const double r = spec.radius();

  return map_nodes(y, [&](std::size_t k) {
    const double t = y.grid()[k];
    if (v[k] == CVector(v[k].size())) return CVector(x.dimension());
    CVector av = circle_integral(
        [&](Complex zeta) {
          CVector value = eval_field(x, t, y[k] + (zeta * delta0) * v[k]);
          value *= r / (zeta * zeta);
          return value;
        },
        spec);
    av *= 1.0 / delta0;
    return av;
  });
}

Curve partial2_second(const Field& x, const Curve& y, const Curve& v, const Curve& w, const ContourSpec& spec) {
  require_same_grid(y, v);
  require_same_grid(y, w);
  require_unit_fraction(spec);
  const double p = x.domain().norm_p();
  const double delta0 = safety_radius(y, x.domain()) / std::max(1.0, sup_norm(v, p) + sup_norm(w, p));
  const double r = spec.radius();

  return map_nodes(y, [&](std::size_t k) {
    const double t = y.grid()[k];
    CVector second = circle_integral(
        [&](Complex zeta) {
          const CVector shifted = y[k] + (zeta * delta0) * v[k];
          CVector inner = circle_integral(
              [&](Complex zeta1) {
                CVector value = eval_field(x, t, shifted + (zeta1 * delta0) * w[k]);
                value *= r / (zeta1 * zeta1);
                return value;
              },
              spec);
          inner *= r / (zeta * zeta);
          return inner;
        },
        spec);
    second *= 1.0 / (delta0 * delta0);
    return second;
  });
}

double remainder_norm(const Field& x, const Field& u, const Curve& y, const Curve& v, Complex t,
                      const ContourSpec& spec) {
  require_same_grid(y, v);
  if (t == Complex(0.0)) throw ParameterError("remainder needs a nonzero increment");
  const double p = x.domain().norm_p();
  const double step = std::abs(t) * sup_norm(v, p);
  for (const Box* box : {&x.domain(), &u.domain()}) {
    const double eps = safety_radius(y, *box);
    if (step >= eps) {
      std::ostringstream os;
      os << "increment |t| sup|v| = " << step << " exceeds the safety radius " << eps;
      throw DomainError(os.str(), y.grid().interval().t0(), step - eps);
    }
  }

  const Curve moved = y + t * v;
  const Curve z = superpose(x, y);
  const Curve z_moved = superpose(x, moved) + t * superpose(u, moved);
  Curve delta = (1.0 / t) * (z_moved - z);
  delta -= superpose(u, y);
  delta -= partial2_apply(x, y, v, spec);
  return sup_norm(delta, p);
}

}  // namespace holocurve
