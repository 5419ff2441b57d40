#include "holocurve/cli/suites.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>

#include "holocurve/chifun.hpp"
#include "holocurve/cli/config.hpp"
#include "holocurve/odesolve.hpp"
#include "holocurve/superpose.hpp"

namespace holocurve::cli {

namespace {

using Rows = std::vector<Row>;

std::string fmt(const char* pattern, double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, pattern, value);
  return buf;
}

void at_most(Rows& rows, std::string name, std::string param, double observed, double bound) {
  rows.push_back({std::move(name), std::move(param), observed, bound, observed <= bound});
}

void at_least(Rows& rows, std::string name, std::string param, double observed, double bound) {
  rows.push_back({std::move(name), std::move(param), observed, bound, observed >= bound});
}

Complex random_complex(std::mt19937_64& rng, double scale) {
  std::uniform_real_distribution<double> u(-scale, scale);
  const double re = u(rng);
  return {re, u(rng)};
}

CVector random_vector(std::mt19937_64& rng, std::size_t n, double scale) {
  CVector v(n);
  for (std::size_t j = 0; j < n; ++j) v[j] = random_complex(rng, scale);
  return v;
}

double max_abs(const CVector& v) {
  double m = 0.0;
  for (const auto& z : v) m = std::max(m, std::abs(z));
  return m;
}

double max_abs_diff(const CVector& a, const CVector& b) { return max_abs(a - b); }

/// Sum of `terms` random monomials per coordinate; the first monomial of
/// each coordinate has state degree exactly `degree`.
std::string random_poly_source(std::mt19937_64& rng, std::size_t n, int degree, int terms, int t_degree,
                               double scale) {
  std::uniform_int_distribution<int> pick_deg(0, degree);
  std::uniform_int_distribution<int> pick_t(0, t_degree);
  std::uniform_int_distribution<std::size_t> pick_var(0, n - 1);
  std::string out;
  char buf[96];
  for (std::size_t i = 0; i < n; ++i) {
    if (i) out += ", ";
    for (int k = 0; k < terms; ++k) {
      const Complex c = random_complex(rng, scale);
      std::snprintf(buf, sizeof buf, "%s(%.17g%+.17gi)", k ? " + " : "", c.real(), c.imag());
      out += buf;
      const int tp = pick_t(rng);
      if (tp > 0) out += "*t^" + std::to_string(tp);
      const int d = k == 0 ? degree : pick_deg(rng);
      std::vector<int> powers(n, 0);
      for (int e = 0; e < d; ++e) powers[pick_var(rng)] += 1;
      for (std::size_t j = 0; j < n; ++j) {
        if (powers[j] > 0) out += "*z" + std::to_string(j) + "^" + std::to_string(powers[j]);
      }
    }
  }
  return out;
}

/// f_i(z) = c_i exp(a_i . z) with closed-form differentials.
struct ExpMap {
  std::vector<CVector> a;
  CVector c;

  CVector operator()(const CVector& z) const {
    CVector out(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) {
      Complex s = 0.0;
      for (std::size_t j = 0; j < z.size(); ++j) s += a[i][j] * z[j];
      out[i] = c[i] * std::exp(s);
    }
    return out;
  }

  CVector differential(const CVector& x, const std::vector<CVector>& dirs) const {
    CVector out = (*this)(x);
    for (std::size_t i = 0; i < c.size(); ++i) {
      for (const auto& u : dirs) {
        Complex s = 0.0;
        for (std::size_t j = 0; j < u.size(); ++j) s += a[i][j] * u[j];
        out[i] *= s;
      }
    }
    return out;
  }
};

ExpMap random_exp_map(std::mt19937_64& rng, std::size_t n) {
  ExpMap m;
  for (std::size_t i = 0; i < n; ++i) m.a.push_back(random_vector(rng, n, 1.0 / static_cast<double>(n)));
  m.c = random_vector(rng, n, 1.0);
  return m;
}

// ---------------------------------------------------------------- contour

Rows contour_suite(const SuiteOptions& opts) {
  Rows rows;
  const ContourSpec unit(32, 1.0);
  for (int k = -8; k <= 8; ++k) {
    const Complex got = circle_integral([k](Complex z) { return CVector{std::pow(z, k)}; }, unit)[0];
    at_most(rows, "contour/zeta_power", "k=" + std::to_string(k), std::abs(got - (k == -1 ? 1.0 : 0.0)), 1e-14);
  }

  std::mt19937_64 rng(opts.seed ^ 0xc0a7u);
  const ContourSpec& spec = opts.contour;
  for (std::size_t k = 1; k <= kMaxDifferentialOrder; ++k) {
    double worst = 0.0, worst_sym = 0.0;
    for (int s = 0; s < 12; ++s) {
      const std::size_t n = 1 + static_cast<std::size_t>(s) % 3;
      const ExpMap f = random_exp_map(rng, n);
      const CVector x = random_vector(rng, n, 1.0);
      std::vector<CVector> dirs;
      for (std::size_t j = 0; j < k; ++j) dirs.push_back(random_vector(rng, n, 1.0));
      const CVector exact = f.differential(x, dirs);
      const CVector got = kth_differential(std::cref(f), x, dirs, spec);
      worst = std::max(worst, max_abs_diff(got, exact) / std::max(1e-300, max_abs(exact)));
      std::reverse(dirs.begin(), dirs.end());
      worst_sym = std::max(worst_sym, max_abs_diff(kth_differential(std::cref(f), x, dirs, spec), got) /
                                          std::max(1.0, max_abs(got)));
    }
    at_most(rows, "contour/exp_differential_rel", "k=" + std::to_string(k), worst, 1e-10);
    at_most(rows, "contour/symmetry", "k=" + std::to_string(k), worst_sym, 1e-10);
  }

  double cr = 0.0, radius = 0.0;
  for (int s = 0; s < 12; ++s) {
    const std::size_t n = 1 + static_cast<std::size_t>(s) % 3;
    const ExpMap f = random_exp_map(rng, n);
    const CVector x = random_vector(rng, n, 1.0);
    const CVector u = random_vector(rng, n, 1.0);
    const std::vector<CVector> d1{u}, di{Complex(0, 1) * u};
    const CVector a = kth_differential(std::cref(f), x, d1, spec);
    cr = std::max(cr, max_abs_diff(kth_differential(std::cref(f), x, di, spec), Complex(0, 1) * a) /
                          std::max(1.0, max_abs(a)));
    const std::vector<CVector> d2{u, random_vector(rng, n, 1.0)};
    const CVector full = kth_differential(std::cref(f), x, d2, spec);
    const CVector half = kth_differential(std::cref(f), x, d2, spec.with_radius(0.5 * spec.radius()));
    radius = std::max(radius, max_abs_diff(full, half) / std::max(1.0, max_abs(full)));
  }
  at_most(rows, "contour/cauchy_riemann", "samples=12", cr, 1e-12);
  at_most(rows, "contour/radius_invariance", "samples=12", radius, 1e-10);

  // exp at 0 along 1: aliasing error sum_j r^{jm} / (jm + 1)!.
  const auto expf = [](const CVector& z) { return CVector{std::exp(z[0])}; };
  for (std::size_t m : {8u, 10u, 12u, 14u, 16u, 20u, 24u, 32u, 64u}) {
    const ContourSpec cs(m, 0.5);
    const std::vector<CVector> dirs{CVector{1}};
    const double err = std::abs(kth_differential(expf, CVector{0}, dirs, cs)[0] - 1.0);
    const double md = static_cast<double>(m);
    const double predicted = std::pow(0.5, md) / std::tgamma(md + 2.0);
    at_most(rows, "contour/error_vs_m_nodes", "m=" + std::to_string(m), err, std::max(2.0 * predicted, 1e-15));
  }

  double audit = 0.0;
  for (const auto& bundled : bundled_fields()) {
    const Field f = parse_field_file(bundled.source);
    const std::size_t n = f.dimension();
    for (int s = 0; s < 20; ++s) {
      const double t = std::uniform_real_distribution<double>(-1, 1)(rng);
      const CVector x = random_vector(rng, n, 0.5);
      const CVector u = random_vector(rng, n, 0.5);
      const VectorMap slice = [&](const CVector& z) { return f.expr().evaluate(t, z); };
      audit = std::max(audit, mean_value_check(slice, x, u, ContourSpec(64, 0.25)) /
                                  std::max(1.0, max_abs(f.expr().evaluate(t, x))));
    }
  }
  at_most(rows, "contour/holomorphy_audit", "fields=" + std::to_string(bundled_fields().size()), audit, 1e-10);
  return rows;
}

// ---------------------------------------------------------------- superpose

struct SuperposeCase {
  Field x, u;
  Curve y, v;
};

SuperposeCase random_superpose_case(std::mt19937_64& rng, const Grid& grid) {
  const std::size_t n = 1 + rng() % 2;
  const Box box(grid.interval(), CVector(n), 3.0);
  const CVector a = random_vector(rng, n, 0.3), b = random_vector(rng, n, 0.3);
  const CVector c = random_vector(rng, n, 1.0), d = random_vector(rng, n, 0.5);
  return {Field::parse(random_poly_source(rng, n, 3, 3, 1, 1.0), box),
          Field::parse(random_poly_source(rng, n, 2, 3, 1, 1.0), box),
          Curve::sample(grid, [&](double t) { return a + t * b; }),
          Curve::sample(grid, [&](double t) { return c + t * d; })};
}

/// Least-squares slope of log r against log |t|.
double fitted_order(const std::vector<double>& mods, const std::vector<double>& rems) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(mods.size());
  for (std::size_t j = 0; j < mods.size(); ++j) {
    const double lx = std::log(mods[j]), ly = std::log(std::max(rems[j], 1e-300));
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

Rows superpose_suite(const SuiteOptions& opts) {
  Rows rows;
  std::mt19937_64 rng(opts.seed ^ 0x5b9e7u);
  const Grid grid(Interval(0, 1), 41);
  const ContourSpec& spec = opts.contour;
  const Complex directions[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};

  double consistency = 0.0, linear = 0.0, additive = 0.0, scale = 0.0, min_order = INFINITY;
  const int cases = 8;
  for (int s = 0; s < cases; ++s) {
    const auto sc = random_superpose_case(rng, grid);
    const Curve av = partial2_apply(sc.x, sc.y, sc.v, spec);
    for (std::size_t k = 0; k < grid.size(); ++k) {
      const double t = grid[k];
      const VectorMap slice = [&](const CVector& z) { return sc.x.expr().evaluate(t, z); };
      const std::vector<CVector> dirs{sc.v[k]};
      const CVector ref = kth_differential(slice, sc.y[k], dirs, spec);
      consistency = std::max(consistency, max_abs_diff(av[k], ref) / std::max(1.0, max_abs(ref)));
    }
    const Complex alpha = random_complex(rng, 2.0), beta = random_complex(rng, 2.0);
    const Curve lhs = superpose(Field::combine(alpha, sc.x, beta, sc.u), sc.y);
    const Curve rhs = alpha * superpose(sc.x, sc.y) + beta * superpose(sc.u, sc.y);
    linear = std::max(linear, sup_norm(lhs - rhs) / std::max(1.0, sup_norm(lhs)));
    const Curve w = Curve::constant(grid, random_vector(rng, sc.x.dimension(), 1.0));
    const Curve sum = partial2_apply(sc.x, sc.y, alpha * sc.v + w, spec);
    additive = std::max(additive, sup_norm(sum - alpha * av - partial2_apply(sc.x, sc.y, w, spec)) /
                                      std::max(1.0, sup_norm(sum)));
    scale = std::max(scale, sup_norm(av - partial2_apply(sc.x, sc.y, sc.v, spec, 0.5)) / std::max(1.0, sup_norm(av)));

    const double t0 = 0.25 / std::max(1.0, sup_norm(sc.v));
    for (const Complex dir : directions) {
      std::vector<double> mods, rems;
      for (int j = 0; j <= 8; ++j) {
        const double mod = std::ldexp(t0, -j);
        mods.push_back(mod);
        rems.push_back(remainder_norm(sc.x, sc.u, sc.y, sc.v, mod * dir, spec));
      }
      min_order = std::min(min_order, fitted_order(mods, rems));
    }
  }
  const std::string param = "cases=" + std::to_string(cases);
  at_most(rows, "superpose/partial2_vs_kth_differential", param, consistency, 1e-11);
  at_most(rows, "superpose/linearity_in_field", param, linear, 1e-13);
  at_most(rows, "superpose/partial2_additivity", param, additive, 1e-10);
  at_most(rows, "superpose/delta0_scale_invariance", param, scale, 1e-10);
  at_least(rows, "superpose/remainder_decay_order_min", param + " j=0..8 dirs=4", min_order, 0.9);

  // Remainder against |t| for a fixed case: remainder / |t| must stay bounded.
  const Box box(grid.interval(), CVector(1), 3.0);
  const Field x = Field::parse("z0^3 + t*z0^2", box);
  const Field u = Field::parse("exp(z0)", box);
  const Curve y = Curve::sample(grid, [](double t) { return CVector{0.5 * t}; });
  const Curve v = Curve::sample(grid, [](double t) { return CVector{Complex(1, 0.5 * t)}; });
  double first = 0.0;
  for (int j = 0; j <= 8; ++j) {
    const double mod = std::ldexp(0.2, -j);
    const double r = remainder_norm(x, u, y, v, Complex(0, mod), spec);
    if (j == 0) first = r / mod;
    at_most(rows, "superpose/remainder_vs_t", fmt("|t|=%.6e", mod), r, 2.0 * first * mod);
  }
  return rows;
}

// ---------------------------------------------------------------- ode

Rows ode_suite(const SuiteOptions& opts) {
  Rows rows;
  std::mt19937_64 rng(opts.seed ^ 0x0de5u);
  SolveOptions solve;
  solve.contour = opts.contour;

  {
    const Field phi = Field::parse("0.5*z0", Box(Interval(0, 0.5), CVector{1}, 2.0));
    const auto rep = picard_solve(phi, CVector{1}, solve);
    const Curve exact = Curve::sample(rep.solution.grid(), [](double t) { return CVector{std::exp(0.5 * t)}; });
    at_most(rows, "ode/linear_closed_form", "lambda=0.5", sup_norm(rep.solution.without_derivs() - exact), 1e-10);
  }
  {
    const Field phi = Field::parse("z0^2", Box(Interval(0, 0.5), CVector{0.5}, 1.0));
    const auto rep = picard_solve(phi, CVector{0.5}, solve);
    const Curve exact = Curve::sample(rep.solution.grid(), [](double t) { return CVector{0.5 / (1 - 0.5 * t)}; });
    at_most(rows, "ode/riccati_closed_form", "xi=0.5", sup_norm(rep.solution.without_derivs() - exact), 1e-8);
  }
  for (const auto& bundled : bundled_fields()) {
    const Field phi = parse_field_file(bundled.source);
    const CVector xi(bundled.xi);
    const auto rep = picard_solve(phi, xi, solve);
    const Curve ref = rk4_solve(phi, xi, rep.solution.grid(), 4);
    at_most(rows, "ode/picard_vs_rk4", bundled.name, sup_norm(rep.solution.without_derivs() - ref), 1e-8);
    at_most(rows, "ode/fixed_point_residual", bundled.name, rep.residual, 10.0 * solve.tol);
  }

  // Constant fields: A |c| against B1_max / 2.
  const double a = 0.5;
  const Box unit(Interval(0, a), CVector{0}, 1.0);
  const double b1_max = kLadderTop * 1.0;
  for (double ratio : {0.1, 0.25, 0.4, 0.45, 0.49, 0.51, 0.55, 0.6, 0.8}) {
    const Complex c = std::polar(ratio * b1_max / a, 0.3);
    const Field phi(FieldExpr({Expr::literal(c)}, 1), unit);
    const auto res = condition_P(phi, CVector{0});
    rows.push_back({"ode/condition_P_constant", fmt("A|c|/B1max=%.2f", ratio), res.ok ? 1.0 : 0.0,
                    ratio < 0.5 ? 1.0 : 0.0, res.ok == (ratio < 0.5)});
  }

  for (const char* src : {"0.5*z0 + 0.1*t", "0.3*sin(z0) + 0.2", "(0.2+0.2i)*z0^2"}) {
    const Field phi = Field::parse(src, Box(Interval(0, 0.5), CVector{0.5}, 3.0));
    const auto rep = picard_solve(phi, CVector{0.5}, solve);
    if (!rep.condition_ok) {
      rows.push_back({"ode/contraction_monotonicity", src, rep.observed_ratio, rep.contraction, false});
      continue;
    }
    at_most(rows, "ode/contraction_monotonicity", src, rep.observed_ratio, rep.contraction + 0.05);
  }

  double fd = 0.0, cr = 0.0;
  const int cases = 4;
  for (int s = 0; s < cases; ++s) {
    const std::size_t n = 1 + static_cast<std::size_t>(s) % 2;
    const Box box(Interval(0, 0.25), CVector(n), 2.0);
    const Field phi = Field::parse(random_poly_source(rng, n, 3, 3, 1, 0.5), box);
    const Field dphi = Field::parse(random_poly_source(rng, n, 2, 3, 1, 0.5), box);
    const CVector xi = random_vector(rng, n, 0.2);
    const CVector dxi = random_vector(rng, n, 1.0);
    const Curve y = picard_solve(phi, xi, solve).solution;
    const Curve v = solution_map_derivative(phi, xi, y, dxi, dphi, opts.contour);
    const Curve q = central_difference(phi, xi, dxi, dphi, 1e-4, solve.grid_nodes, solve.tol, solve.max_iter);
    fd = std::max(fd, sup_norm(v.without_derivs() - q));
    const Complex i(0, 1);
    const Curve vi = solution_map_derivative(phi, xi, y, i * dxi, Field::combine(i, dphi, 0.0, dphi), opts.contour);
    cr = std::max(cr, sup_norm(vi.without_derivs() - i * v.without_derivs()));
  }
  at_most(rows, "ode/derivative_vs_central_difference", "cases=4 h=1e-4", fd, 1e-6);
  at_most(rows, "ode/solution_map_cauchy_riemann", "cases=4", cr, 1e-9);

  // The probe for a(t) = t is the grid spacing; it halves under refinement.
  const Field lin_t = Field::parse("t*z0", Box(Interval(0, 0.5), CVector{1}, 2.0));
  double prev = 0.0;
  for (std::size_t m : {51u, 101u, 201u, 401u}) {
    SolveOptions o = solve;
    o.grid_nodes = m;
    const Curve y = picard_solve(lin_t, CVector{1}, o).solution;
    const double probe = a_hat_continuity_probe(lin_t, y, opts.contour);
    const double h = y.grid().spacing();
    at_most(rows, "ode/probe_vs_spacing", fmt("h=%.6e", h), probe, 2.0 * h);
    if (prev > 0.0) {
      const double ratio = prev / probe;
      rows.push_back({"ode/probe_refinement_ratio", fmt("h=%.6e", h), ratio, 2.0, std::abs(ratio - 2.0) <= 0.5});
    }
    prev = probe;
  }
  return rows;
}

// ---------------------------------------------------------------- chi

CVector random_chi_input(std::mt19937_64& rng, std::size_t n, double head_scale) {
  const std::size_t head = rng() % (std::min<std::size_t>(n, 8) + 1);
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

Rows chi_suite(const SuiteOptions& opts) {
  Rows rows;
  std::mt19937_64 rng(opts.seed ^ 0xc41u);

  double rel = 0.0, cr = 0.0, trunc = 0.0;
  const ContourSpec spec(64, 0.25);
  const VectorMap f = [](const CVector& z) { return CVector{chi(z)}; };
  for (int s = 0; s < 100; ++s) {
    const CVector x = random_chi_input(rng, 16, 0.8);
    CVector u = random_vector(rng, 16, 1.0);
    u = (1.0 / norm(2, u)) * u;
    const std::vector<CVector> dirs{u};
    const Complex exact = dchi(x, u);
    rel = std::max(rel, std::abs(kth_differential(f, x, dirs, spec)[0] - exact) / std::max(1.0, std::abs(exact)));
    cr = std::max(cr, std::abs(dchi(x, Complex(0, 1) * u) - Complex(0, 1) * exact));
    CVector padded(24);
    for (std::size_t i = 0; i < 16; ++i) padded[i] = x[i];
    trunc = std::max(trunc, std::abs(chi(padded) - chi(x)));
  }
  at_most(rows, "chi/dchi_vs_contour_rel", "samples=100", rel, 1e-10);
  at_most(rows, "chi/dchi_cauchy_riemann", "samples=100", cr, 0.0);
  at_most(rows, "chi/truncation_monotone", "n=16,24", trunc, 0.0);

  double worst = 0.0;
  std::size_t failures = 0;
  std::uniform_real_distribution<double> size(0.0, 0.1249);
  for (int s = 0; s < 500; ++s) {
    const double p = s % 2 == 0 ? 1.0 : 2.0;
    const CVector x = random_chi_input(rng, 32, 1.5);
    CVector u = random_vector(rng, 32, 1.0);
    u = (size(rng) / norm(p, u)) * u;
    const auto c = continuity_bound_check(x, u, p);
    if (!c.ok) ++failures;
    if (c.rhs > 0) worst = std::max(worst, c.lhs / c.rhs);
  }
  at_most(rows, "chi/continuity_bound_ratio", "samples=500 n=32 p=1,2", worst, 1.0);
  at_most(rows, "chi/continuity_bound_failures", "samples=500", static_cast<double>(failures), 0.0);

  worst = 0.0;
  failures = 0;
  std::uniform_real_distribution<double> log_eps(-3, 0);
  for (int s = 0; s < 200; ++s) {
    const CVector x = random_chi_input(rng, 16, 1.5);
    const CVector u = random_chi_input(rng, 16, 2.0);
    const auto r = remainder_bound_check(x, u, std::pow(10.0, log_eps(rng)));
    if (!r.ok) ++failures;
    worst = std::max(worst, r.worst_ratio);
  }
  at_most(rows, "chi/remainder_bound_ratio", "samples=200 n=16", worst, 1.0);
  at_most(rows, "chi/remainder_bound_failures", "samples=200", static_cast<double>(failures), 0.0);

  const auto w = unboundedness_witness(30.0, 100);
  rows.push_back({"chi/unboundedness_witness", "target=30 n=100 i=" + std::to_string(w.index), w.value.real(), 30.0,
                  w.value.real() > 30.0 && norm(1, w.x) < 1.0});

  // Difference quotient error against |t|; bounded by the remainder sum.
  const CVector x{0, Complex(0.5, 0.1), Complex(-0.3, 0.4), 0.2, Complex(0, 0.6)};
  const CVector u{1, Complex(0.2, -1), 0.5, Complex(1, 1), -0.3};
  for (int j = 6; j <= 14; j += 2) {
    const double t = std::ldexp(1.0, -j);
    const double err = std::abs((chi(x + t * u) - chi(x)) / t - dchi(x, u));
    at_most(rows, "chi/difference_quotient_vs_t", fmt("t=%.6e", t), err, chi_remainder(x, u, t) * (1 + 1e-9));
  }
  return rows;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"contour", "superpose", "ode", "chi"};
  return names;
}

bool is_suite_name(std::string_view name) {
  return name == "all" || std::find(suite_names().begin(), suite_names().end(), name) != suite_names().end();
}

std::vector<Row> run_suite(std::string_view name, const SuiteOptions& options) {
  if (name == "all") {
    Rows all;
    for (const auto& s : suite_names()) {
      auto rows = run_suite(s, options);
      all.insert(all.end(), rows.begin(), rows.end());
    }
    return all;
  }
  if (name == "contour") return contour_suite(options);
  if (name == "superpose") return superpose_suite(options);
  if (name == "ode") return ode_suite(options);
  if (name == "chi") return chi_suite(options);
  throw ConfigError("unknown suite '" + std::string(name) + "' (expected contour, superpose, ode, chi or all)");
}

std::string to_csv(const std::vector<Row>& rows) {
  std::ostringstream os;
  os << "case,parameter,observed,bound,pass\n";
  char buf[64];
  for (const auto& r : rows) {
    os << r.case_name << ",\"" << r.parameter << "\",";
    std::snprintf(buf, sizeof buf, "%.6e,%.6e", r.observed, r.bound);
    os << buf << ',' << (r.pass ? "true" : "false") << '\n';
  }
  return os.str();
}

const std::vector<BundledField>& bundled_fields() {
  static const std::vector<BundledField> fields{
      {"linear", "0.5*z0\ndomain { t0 = 0, A = 0.5, center = [1], radius = 2 }\n", {1.0}},
      {"riccati", "z0^2\ndomain { t0 = 0, A = 0.5, center = [0.5], radius = 1 }\n", {0.5}},
      {"rotation", "-z1, z0\ndomain { t0 = 0, A = 0.5, center = [0, 0], radius = 3 }\n", {1.0, 0.0}},
      {"pendulum", "z1, -sin(z0)\ndomain { t0 = 0, A = 0.5, center = [0.5, 0], radius = 2 }\n", {0.5, 0.0}},
      {"forced", "(0.2+0.3i)*z0 + exp(i*t)\ndomain { t0 = 0, A = 0.5, center = [0], radius = 3 }\n", {0.2}},
      {"time_linear", "t*z0\ndomain { t0 = 0, A = 0.5, center = [1], radius = 2 }\n", {1.0}},
      {"coupled3",
       "0.5*(z1 - z0), z0*(1 - z2) - z1, z0*z1 - 0.8*z2\n"
       "domain { t0 = 0, A = 0.25, center = [1, 1, 1], radius = 2 }\n",
       {1.0, 1.0, 1.0}},
  };
  return fields;
}

Curve central_difference(const Field& phi, const CVector& xi, const CVector& dxi, const std::optional<Field>& dphi,
                         Complex h, std::size_t grid_nodes, double tol, std::size_t max_iter) {
  SolveOptions opts;
  opts.grid_nodes = grid_nodes;
  opts.tol = tol;
  opts.max_iter = max_iter;
  const Field zero = Field::zero(phi.domain());
  const Field& d = dphi ? *dphi : zero;
  const Curve plus = picard_solve(Field::combine(1.0, phi, h, d), xi + h * dxi, opts).solution.without_derivs();
  const Curve minus = picard_solve(Field::combine(1.0, phi, -h, d), xi - h * dxi, opts).solution.without_derivs();
  return (1.0 / (2.0 * h)) * (plus - minus);
}

}  // namespace holocurve::cli
