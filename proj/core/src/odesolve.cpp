#include "holocurve/odesolve.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "holocurve/errors.hpp"
#include "holocurve/parallel.hpp"
#include "holocurve/superpose.hpp"

namespace holocurve {

namespace {

constexpr std::size_t kProbeDirections = 16;

/// \int_{x_a}^{x_a + h} of the cubic (or quadratic, for tiny grids)
/// interpolant through up to four nodes around the interval [a, a+1].
CVector single_interval(const Curve& v, std::size_t a) {
  const std::size_t m = v.size();
  const std::size_t width = std::min<std::size_t>(4, m);
  std::ptrdiff_t first = static_cast<std::ptrdiff_t>(a) - 1;
  first = std::clamp<std::ptrdiff_t>(first, 0, static_cast<std::ptrdiff_t>(m - width));
  const auto& grid = v.grid();
  const double lo = grid[a];
  const double h = grid[a + 1] - grid[a];
  // Two-point Gauss-Legendre integrates the cubic Lagrange basis exactly.
  const double g = 0.5 / std::sqrt(3.0);
  const std::array<double, 2> points{lo + (0.5 - g) * h, lo + (0.5 + g) * h};

  CVector out(v.dimension());
  for (std::size_t i = 0; i < width; ++i) {
    const std::size_t ii = static_cast<std::size_t>(first) + i;
    double weight = 0.0;
    for (double x : points) {
      double basis = 1.0;
      for (std::size_t j = 0; j < width; ++j) {
        if (j == i) continue;
        const std::size_t jj = static_cast<std::size_t>(first) + j;
        basis *= (x - grid[jj]) / (grid[ii] - grid[jj]);
      }
      weight += 0.5 * h * basis;
    }
    out += weight * v[ii];
  }
  return out;
}

CVector simpson_pair(const Curve& v, std::size_t a) {
  const double h = v.grid().spacing();
  CVector out = v[a] + 4.0 * v[a + 1] + v[a + 2];
  out *= h / 3.0;
  return out;
}

void check_interior_start(const Field& phi, const CVector& xi) {
  if (xi.size() != phi.dimension()) throw ParameterError("initial value dimension differs from field dimension");
  const double margin = phi.domain().margin(xi);
  if (!(margin > 0.0)) {
    throw DomainError("initial value is not interior to the field's domain", phi.domain().interval().t0(), -margin);
  }
}

double tube_sup(const Field& phi, const CVector& xi, double b1, const TubeSampling& sampling) {
  const Box& box = phi.domain();
  const Grid grid(box.interval(), std::max<std::size_t>(3, sampling.time_nodes | 1U));
  const auto dirs = unit_directions(phi.dimension(), sampling.directions, box.norm_p());
  std::vector<double> per_node(grid.size(), 0.0);
  parallel_for(grid.size(), [&](std::size_t k) {
    const double t = grid[k];
    double best = norm(box.norm_p(), eval_field(phi, t, xi));
    for (std::size_t r = 1; r <= sampling.radii; ++r) {
      const double rho = b1 * static_cast<double>(r) / static_cast<double>(sampling.radii);
      for (const auto& d : dirs) best = std::max(best, norm(box.norm_p(), eval_field(phi, t, xi + rho * d)));
    }
    per_node[k] = best;
  });
  return *std::max_element(per_node.begin(), per_node.end());
}

/// a(t_k) d for each node k and direction d, by the scaled Cauchy formula.
std::vector<std::vector<CVector>> derivative_samples(const Field& phi, const Curve& y, const ContourSpec& spec,
                                                     const std::vector<CVector>& dirs) {
  const double delta0 = safety_radius(y, phi.domain());
  const ContourSpec inner = spec.with_radius(std::min(spec.radius(), 1.0) * delta0);
  std::vector<std::vector<CVector>> out(y.size());
  parallel_for(y.size(), [&](std::size_t k) {
    const double t = y.grid()[k];
    const VectorMap slice = [&](const CVector& xi) { return eval_field(phi, t, xi); };
    out[k].reserve(dirs.size());
    for (const auto& d : dirs) {
      const CVector dir[1] = {d};
      out[k].push_back(kth_differential(slice, y[k], dir, inner));
    }
  });
  return out;
}

double observed_ratio(const std::vector<double>& increments, double scale) {
  const double floor = 64.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, scale);
  double ratio = 0.0;
  for (std::size_t k = 1; k < increments.size(); ++k) {
    if (increments[k] > floor && increments[k - 1] > floor) ratio = std::max(ratio, increments[k] / increments[k - 1]);
  }
  return ratio;
}

}  // namespace

std::vector<CVector> unit_directions(std::size_t n, std::size_t count, double norm_p) {
  std::vector<CVector> dirs;
  dirs.reserve(count);
  const std::array<Complex, 4> phases{Complex(1, 0), Complex(0, 1), Complex(-1, 0), Complex(0, -1)};
  for (std::size_t j = 0; j < n && dirs.size() < count; ++j) {
    for (const auto& ph : phases) {
      if (dirs.size() == count) break;
      dirs.push_back(CVector::unit(n, j, ph));
    }
  }
  std::mt19937_64 rng(0x5eedULL + n);
  std::normal_distribution<double> gauss;
  while (dirs.size() < count) {
    CVector d(n);
    for (std::size_t j = 0; j < n; ++j) d[j] = Complex(gauss(rng), gauss(rng));
    const double len = norm(norm_p, d);
    if (len > 0.0) dirs.push_back((1.0 / len) * d);
  }
  return dirs;
}

Curve antiderivative(const Curve& v) {
  const std::size_t m = v.size();
  const std::size_t c = v.grid().center_index();
  std::vector<CVector> out(m, CVector(v.dimension()));
  for (std::size_t j = 1; c + j < m; ++j) {
    const std::size_t k = c + j;
    out[k] = (j % 2 == 0) ? out[k - 2] + simpson_pair(v, k - 2) : out[k - 1] + single_interval(v, k - 1);
  }
  for (std::size_t j = 1; j <= c; ++j) {
    const std::size_t k = c - j;
    out[k] = (j % 2 == 0) ? out[k + 2] - simpson_pair(v, k) : out[k + 1] - single_interval(v, k);
  }
  return Curve(v.grid(), std::move(out));
}

ConditionResult condition_P_at(const Field& phi, const CVector& xi, double b1, const TubeSampling& sampling) {
  check_interior_start(phi, xi);
  const double dist = phi.domain().margin(xi);
  if (!(b1 > 0.0) || b1 > dist) throw ParameterError("tube radius must lie in (0, distance to the boundary]");
  ConditionResult res;
  res.b1 = b1;
  res.b1_max = kLadderTop * dist;
  res.sup = tube_sup(phi, xi, b1, sampling);
  const double a = phi.domain().interval().half_width();
  res.ok = res.sup < 0.5 * b1 / a;
  res.contraction = res.ok ? a * res.sup / (b1 - a * res.sup) : std::numeric_limits<double>::infinity();
  return res;
}

ConditionResult condition_P(const Field& phi, const CVector& xi, const TubeSampling& sampling) {
  check_interior_start(phi, xi);
  const double b1_max = kLadderTop * phi.domain().margin(xi);
  ConditionResult last;
  double b1 = b1_max;
  for (std::size_t rung = 0; rung < kLadderRungs; ++rung, b1 *= kLadderRatio) {
    last = condition_P_at(phi, xi, b1, sampling);
    if (last.ok) break;
  }
  last.b1_max = b1_max;
  return last;
}

SolveReport picard_solve(const Field& phi, const CVector& xi, const SolveOptions& opts) {
  check_interior_start(phi, xi);
  if (!(opts.tol > 0.0)) throw ParameterError("tolerance must be > 0");
  const Grid grid(phi.domain().interval(), opts.grid_nodes);
  const double p = phi.domain().norm_p();
  const double a = phi.domain().interval().half_width();

  SolveReport report(Curve::constant(grid, xi));
  const ConditionResult cond =
      opts.tube_radius ? condition_P_at(phi, xi, *opts.tube_radius, opts.sampling) : condition_P(phi, xi, opts.sampling);
  report.condition_ok = cond.ok;
  report.b1 = cond.b1;

  const Curve start = Curve::constant(grid, xi);
  Curve y = start;
  bool converged = false;
  for (std::size_t k = 1; k <= opts.max_iter; ++k) {
    Curve next = start + antiderivative(superpose(phi, y));
    const double step = sup_norm(next - y, p);
    report.increments.push_back(step);
    y = std::move(next);
    report.iterations = k;
    if (step < opts.tol) {
      converged = true;
      break;
    }
  }
  report.observed_ratio = observed_ratio(report.increments, sup_norm(y, p));
  if (!converged) {
    std::ostringstream os;
    os << "Picard iteration did not reach tol " << opts.tol << " in " << opts.max_iter
       << " iterations (last increment " << report.increments.back() << ", observed ratio " << report.observed_ratio
       << ")";
    throw ConvergenceError(os.str(), opts.max_iter, report.observed_ratio);
  }

  Curve slope = superpose(phi, y);
  report.residual = sup_norm(y - start - antiderivative(slope), p);
  if (cond.ok) {
    report.contraction = cond.contraction;
  } else {
    const auto dirs = unit_directions(phi.dimension(), kProbeDirections, p);
    double lip = 0.0;
    try {
      for (const auto& node : derivative_samples(phi, y, opts.contour, dirs)) {
        for (const auto& ad : node) lip = std::max(lip, norm(p, ad));
      }
      report.contraction = a * lip;
    } catch (const DegenerateDomainError&) {
      // Solution grazes the boundary: no contour room for an estimate.
      report.contraction = std::numeric_limits<double>::infinity();
    }
  }
  std::vector<CVector> derivs(slope.values().begin(), slope.values().end());
  report.solution = y.with_derivs(std::move(derivs));
  return report;
}

Curve rk4_solve(const Field& phi, const CVector& xi, const Grid& grid, std::size_t substeps) {
  check_interior_start(phi, xi);
  if (substeps == 0) throw ParameterError("substeps must be >= 1");
  std::vector<CVector> values(grid.size());
  const std::size_t c = grid.center_index();
  values[c] = xi;

  auto step = [&](double t, const CVector& y, double h) {
    const CVector k1 = eval_field(phi, t, y);
    const CVector k2 = eval_field(phi, t + 0.5 * h, y + (0.5 * h) * k1);
    const CVector k3 = eval_field(phi, t + 0.5 * h, y + (0.5 * h) * k2);
    const CVector k4 = eval_field(phi, t + h, y + h * k3);
    return y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  };
  auto march = [&](std::size_t from, std::size_t to) {
    const double h = (grid[to] - grid[from]) / static_cast<double>(substeps);
    CVector y = values[from];
    for (std::size_t s = 0; s < substeps; ++s) y = step(grid[from] + static_cast<double>(s) * h, y, h);
    values[to] = std::move(y);
  };
  for (std::size_t k = c; k + 1 < grid.size(); ++k) march(k, k + 1);
  for (std::size_t k = c; k > 0; --k) march(k, k - 1);
  return Curve(grid, std::move(values));
}

Curve rk4_solve(const Field& phi, const CVector& xi, std::size_t steps) {
  if (steps < 2 || steps % 2 != 0) throw ParameterError("RK4 step count must be even and >= 2");
  return rk4_solve(phi, xi, Grid(phi.domain().interval(), steps + 1));
}

double lipschitz_bound(const Field& phi, double t, const CVector& xi, double delta0, const ContourSpec& spec) {
  const Box& box = phi.domain();
  if (!(delta0 > 0.0)) throw ParameterError("delta0 must be > 0");
  if (!box.interval().contains(t)) throw DomainError("Lipschitz probe time outside the interval", t, 0.0);
  const double margin = box.margin(xi);
  if (margin < 2.0 * delta0) {
    throw DomainError("ball of radius 2 delta0 about the probe point leaves the domain", t, 2.0 * delta0 - margin);
  }
  const double p = box.norm_p();
  const ContourSpec inner = spec.with_radius(std::min(spec.radius(), 1.0));
  const auto dirs3 = unit_directions(phi.dimension(), kProbeDirections, p);
  const auto dirs4 = unit_directions(phi.dimension(), 8, p);

  std::vector<double> times{t};
  for (double s : {t - delta0, t + delta0}) {
    if (box.interval().contains(s)) times.push_back(s);
  }
  std::vector<CVector> centers{xi};
  for (const auto& d : dirs4) centers.push_back(xi + (0.5 * delta0) * d);

  double m0 = 0.0;
  for (double t1 : times) {
    const VectorMap slice = [&](const CVector& z) { return eval_field(phi, t1, z); };
    for (const auto& xi4 : centers) {
      for (const auto& d : dirs3) {
        const CVector xi3[1] = {delta0 * d};
        m0 = std::max(m0, norm(p, kth_differential(slice, xi4, xi3, inner)));
      }
    }
  }
  return m0 / delta0;
}

Curve solution_map_derivative(const Field& phi, const CVector& xi, const Curve& y, const CVector& dxi,
                              const std::optional<Field>& dphi, const ContourSpec& spec,
                              const VariationalOptions& opts) {
  if (dxi.size() != phi.dimension() || xi.size() != phi.dimension()) {
    throw ParameterError("perturbation dimension differs from field dimension");
  }
  if (dphi && dphi->dimension() != phi.dimension()) throw ParameterError("dphi dimension differs from phi");
  const double p = phi.domain().norm_p();
  const Curve forcing = dphi ? superpose(*dphi, y) : Curve::constant(y.grid(), CVector(phi.dimension()));
  const Curve start = Curve::constant(y.grid(), dxi);

  Curve v = start;
  std::vector<double> increments;
  for (std::size_t k = 0; k < opts.max_iter; ++k) {
    Curve next = start + antiderivative(partial2_apply(phi, y, v, spec) + forcing);
    const double step = sup_norm(next - v, p);
    increments.push_back(step);
    v = std::move(next);
    if (step <= opts.tol * std::max(1.0, sup_norm(v, p))) {
      Curve slope = partial2_apply(phi, y, v, spec) + forcing;
      return v.with_derivs(std::vector<CVector>(slope.values().begin(), slope.values().end()));
    }
  }
  const double ratio = observed_ratio(increments, sup_norm(v, p));
  throw ConvergenceError("variational Picard iteration did not converge", opts.max_iter, ratio);
}

double a_hat_continuity_probe(const Field& phi, const Curve& y, const ContourSpec& spec) {
  const double p = phi.domain().norm_p();
  const auto dirs = unit_directions(phi.dimension(), kProbeDirections, p);
  const auto samples = derivative_samples(phi, y, spec, dirs);
  double worst = 0.0;
  for (std::size_t k = 0; k + 1 < samples.size(); ++k) {
    for (std::size_t j = 0; j < dirs.size(); ++j) worst = std::max(worst, norm(p, samples[k + 1][j] - samples[k][j]));
  }
  return worst;
}

}  // namespace holocurve
