#pragma once

// The superposition map (x, y) -> x o [id, y], t -> x(t, y(t)), and its
// partial derivatives in the curve slot computed by scaled Cauchy contours.
//
// Contour radii: the spec's radius is a fraction (<= 1) of a certified
// scale delta0 = safety_radius(y, dom x) / max(1, sup |v|), so every contour
// sample y(t) + zeta * delta0 * v(t) stays inside the field's domain.

#include "holocurve/contour.hpp"
#include "holocurve/fieldexpr.hpp"
#include "holocurve/lincomplex.hpp"

namespace holocurve {

/// Safety factor applied to grid-sampled boundary distances.
inline constexpr double kSafetyFactor = 0.9;

/// z(t) = x(t, y(t)) at every node. Throws DomainError for the first node
/// whose graph point leaves dom x.
Curve superpose(const Field& x, const Curve& y);

/// 0.9 * min over nodes of (radius - |y(t) - center|): every (t, xi) with
/// |xi - y(t)| <= result lies in the box. Throws DegenerateDomainError when
/// the graph touches or leaves the boundary.
double safety_radius(const Curve& y, const Box& domain);

/// (d2 x)(t, y(t)) . v(t) via delta0^{-1} \oint zeta^{-2} x(t, y + zeta delta0 v).
/// `delta0_scale` in (0, 1] shrinks the certified delta0; holomorphy makes the
/// result independent of it.
Curve partial2_apply(const Field& x, const Curve& y, const Curve& v, const ContourSpec& spec,
                     double delta0_scale = 1.0);

/// Second differential t -> d^2 x(t, .)(y(t))[v(t), w(t)] from the double
/// contour with weights zeta^{-2} zeta1^{-2}; delta0 is shared by v and w.
Curve partial2_second(const Field& x, const Curve& y, const Curve& v, const Curve& w, const ContourSpec& spec);

/// sup-norm of
///   t^{-1} ((x + t u) o [id, y + t v] - x o [id, y]) - u o [id, y] - (d2 x o [id, y]) . v
/// for a complex increment t. Throws DomainError when |t| sup|v| does not
/// fit inside the safety radius of either domain.
double remainder_norm(const Field& x, const Field& u, const Curve& y, const Curve& v, Complex t,
                      const ContourSpec& spec);

}  // namespace holocurve
