#pragma once

// Solutions of y' = phi(t, y), y(t0) = xi on I = [t0 - A, t0 + A] by Picard
// iteration y <- xi + l0(phi o [id, y]), where l0 is the antiderivative from
// t0, together with the tube condition that certifies the iteration and the
// derivative of the solution map (xi, phi) -> y through the variational
// equation v' = a v + dphi o [id, y], a(t) = d2 phi(t, y(t)).

#include <cstddef>
#include <optional>
#include <vector>

#include "holocurve/contour.hpp"
#include "holocurve/fieldexpr.hpp"
#include "holocurve/lincomplex.hpp"

namespace holocurve {

inline constexpr std::size_t kDefaultGridNodes = 201;
inline constexpr std::size_t kLadderRungs = 8;
inline constexpr double kLadderTop = 0.9;
inline constexpr double kLadderRatio = 0.5;

/// How the supremum of |phi| over a tube I x B(xi, B1) is sampled.
struct TubeSampling {
  std::size_t directions = 32;
  std::size_t radii = 4;
  std::size_t time_nodes = kDefaultGridNodes;
};

struct ConditionResult {
  bool ok = false;
  /// Tube radius of the accepted rung, or of the smallest rung tried on failure.
  double b1 = 0.0;
  /// Largest rung, 0.9 x distance from xi to the domain boundary.
  double b1_max = 0.0;
  /// Sampled sup of |phi| over the tube of radius b1.
  double sup = 0.0;
  /// A M / (B1 - A M) when ok: the Picard map's Lipschitz bound from the
  /// Cauchy estimate on the tube; +inf otherwise.
  double contraction = 0.0;
};

struct SolveOptions {
  std::size_t grid_nodes = kDefaultGridNodes;
  double tol = 1e-12;
  std::size_t max_iter = 200;
  /// Use this tube radius for the condition instead of searching the ladder.
  std::optional<double> tube_radius;
  TubeSampling sampling{};
  ContourSpec contour = ContourSpec();
};

struct SolveReport {
  explicit SolveReport(Curve initial) : solution(std::move(initial)) {}

  /// Solution values with derivative samples phi o [id, y].
  Curve solution;
  std::size_t iterations = 0;
  /// Certified contraction when condition_ok, else a local estimate
  /// A * max_t |d2 phi(t, y(t))| from contour samples along the solution.
  double contraction = 0.0;
  /// sup |y - xi - l0(phi o [id, y])|.
  double residual = 0.0;
  bool condition_ok = false;
  double b1 = 0.0;
  /// sup |y^{k+1} - y^k| per iteration.
  std::vector<double> increments;
  /// Largest ratio of consecutive increments above the rounding floor.
  double observed_ratio = 0.0;
};

/// t -> \int_{t0}^t v(s) ds on v's grid: composite Simpson over node pairs
/// from t0, with a cubic single-interval rule for odd offsets. Exactly zero
/// at t0.
Curve antiderivative(const Curve& v);

/// Tube condition: searches B1 over kLadderRungs rungs 0.9 d, 0.45 d, ...
/// (d the distance from xi to the boundary) and accepts the first with
/// sampled sup |phi| over I x B(xi, B1) below B1 / (2 A).
ConditionResult condition_P(const Field& phi, const CVector& xi, const TubeSampling& sampling = {});
/// Same test at a single caller-chosen tube radius.
ConditionResult condition_P_at(const Field& phi, const CVector& xi, double b1, const TubeSampling& sampling = {});

/// Picard iteration from y^0 = xi on a grid of opts.grid_nodes nodes over
/// phi's interval. Runs whether or not the tube condition holds; the verdict
/// is recorded in the report. Throws ConvergenceError after max_iter
/// iterations and DomainError when an iterate leaves dom phi.
SolveReport picard_solve(const Field& phi, const CVector& xi, const SolveOptions& opts = {});

/// Classical RK4 outward from t0 in both directions, `substeps` steps per
/// grid interval.
Curve rk4_solve(const Field& phi, const CVector& xi, const Grid& grid, std::size_t substeps = 1);
/// RK4 with `steps` (even) steps across the whole interval of phi.
Curve rk4_solve(const Field& phi, const CVector& xi, std::size_t steps);

/// Local Lipschitz constant of phi(t, .) near (t, xi):
/// delta0^{-1} max |\oint zeta^{-2} phi(t1, xi4 + zeta xi3)| over sampled
/// t1 within delta0 of t, xi4 within delta0/2 of xi and |xi3| = delta0.
/// Requires the ball of radius 2 delta0 about xi inside the domain slice.
double lipschitz_bound(const Field& phi, double t, const CVector& xi, double delta0, const ContourSpec& spec = ContourSpec());

struct VariationalOptions {
  double tol = 1e-13;
  std::size_t max_iter = 400;
};

/// Directional derivative of the solution map at (xi, phi) along (dxi, dphi):
/// the solution of v' = a(t) v + dphi(t, y(t)), v(t0) = dxi, obtained by
/// Picard iteration v <- dxi + l0(a . v + dphi o [id, y]) with a . v from
/// partial2_apply. An absent dphi means the zero field.
Curve solution_map_derivative(const Field& phi, const CVector& xi, const Curve& y, const CVector& dxi,
                              const std::optional<Field>& dphi, const ContourSpec& spec = ContourSpec(),
                              const VariationalOptions& opts = {});

/// max over adjacent nodes and 16 unit directions d of
/// |a(t_{k+1}) d - a(t_k) d|, a(t) = d2 phi(t, y(t)).
double a_hat_continuity_probe(const Field& phi, const Curve& y, const ContourSpec& spec = ContourSpec());

/// `count` deterministic unit vectors (in the l^p norm) of C^n: the
/// coordinate directions times 1, i, -1, -i first, then fixed pseudo-random
/// complex directions.
std::vector<CVector> unit_directions(std::size_t n, std::size_t count, double norm_p);

}  // namespace holocurve
