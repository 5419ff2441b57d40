#include "holocurve/chifun.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "holocurve/errors.hpp"

namespace holocurve {

namespace {

Complex ipow(Complex z, std::size_t e) {
  Complex r = 1.0;
  while (e != 0) {
    if (e & 1U) r *= z;
    z *= z;
    e >>= 1;
  }
  return r;
}

/// ((x + h)^i - x^i) / h = sum_{k<i} (x + h)^k x^{i-1-k}.
Complex power_difference_quotient(Complex x, Complex h, std::size_t i) {
  const Complex w = x + h;
  Complex sum = 0.0;
  Complex wk = 1.0;
  for (std::size_t k = 0; k < i; ++k) {
    sum += wk * ipow(x, i - 1 - k);
    wk *= w;
  }
  return sum;
}

}  // namespace

Complex chi(const CVector& x) {
  Complex sum = 0.0;
  for (std::size_t i = 1; i < x.size(); ++i) sum += static_cast<double>(i) * ipow(x[i], i);
  return sum;
}

Complex dchi(const CVector& x, const CVector& u) {
  if (u.size() != x.size()) throw ParameterError("dchi needs x and u of equal length");
  Complex sum = 0.0;
  for (std::size_t i = 1; i < x.size(); ++i) {
    const double ii = static_cast<double>(i);
    sum += ii * ii * ipow(x[i], i - 1) * u[i];
  }
  return sum;
}

ChiWitness unboundedness_witness(double target, std::size_t n) {
  for (std::size_t i = 2; i < n; ++i) {
    const double s = 1.0 - 1.0 / static_cast<double>(i);
    const double value = static_cast<double>(i) * std::pow(s, static_cast<double>(i));
    if (value > target) {
      ChiWitness w{CVector::unit(n, i, s), 0.0, i};
      w.value = chi(w.x);
      return w;
    }
  }
  const auto suggested = static_cast<std::size_t>(std::ceil(std::numbers::e * std::max(target, 0.0))) + 1;
  std::ostringstream os;
  os << "no index below " << n << " reaches chi > " << target << "; try n >= " << suggested;
  throw WitnessUnreachable(os.str(), suggested);
}

std::size_t tail_cutoff(const CVector& x) {
  std::size_t cutoff = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(std::abs(x[i]) < kTailBound)) cutoff = i + 1;
  }
  return cutoff;
}

std::size_t tail_cutoff(const CVector& x, const CVector& u) { return std::max(tail_cutoff(x), tail_cutoff(u)); }

ContinuityCheck continuity_bound_check(const CVector& x, const CVector& u, double norm_p) {
  if (u.size() != x.size()) throw ParameterError("continuity check needs x and u of equal length");
  const double nu = norm(norm_p, u);
  if (!(nu < kTailBound)) throw ParameterError("continuity bound requires |u| < 1/8");

  ContinuityCheck c;
  c.cutoff = tail_cutoff(x);
  c.m = 1.0 + norm(norm_p, x);
  Complex diff = 0.0;
  for (std::size_t i = 1; i < x.size(); ++i) {
    diff += static_cast<double>(i) * u[i] * power_difference_quotient(x[i], u[i], i);
  }
  c.lhs = std::abs(diff);
  const double big_n = static_cast<double>(c.cutoff);
  // Empty head sum for N = 0.
  const double head = c.cutoff == 0 ? 0.0 : big_n * big_n * big_n * std::pow(c.m, big_n - 2.0);
  const double tail = std::pow(2.0, 3.0 - big_n) * (1.0 + big_n);
  c.rhs = nu * (head + tail);
  c.ok = c.lhs <= c.rhs;
  return c;
}

double chi_remainder(const CVector& x, const CVector& u, Complex t) {
  if (u.size() != x.size()) throw ParameterError("remainder needs x and u of equal length");
  double total = 0.0;
  for (std::size_t i = 2; i < x.size(); ++i) {
    const Complex w = x[i] + t * u[i];
    Complex s = 0.0;
    for (std::size_t j = 0; j + 2 <= i; ++j) {
      s += static_cast<double>(i - 1 - j) * ipow(w, j) * ipow(x[i], i - 2 - j);
    }
    total += static_cast<double>(i) * std::abs(t * u[i] * u[i] * s);
  }
  return total;
}

RemainderCheck remainder_bound_check(const CVector& x, const CVector& u, double eps, double norm_p) {
  if (!(eps > 0.0)) throw ParameterError("eps must be > 0");
  RemainderCheck r;
  r.cutoff = tail_cutoff(x, u);
  r.m = 1.0 + norm(norm_p, x) + norm(norm_p, u);
  const double big_n = static_cast<double>(r.cutoff);
  const double chain = big_n * big_n * big_n * std::pow(r.m, big_n) + 128.0 * (1.0 + big_n);
  r.delta = std::min(1.0, eps / (r.m * r.m * chain));

  auto sample = [&](double modulus, double angle) {
    const Complex t = std::polar(modulus, angle);
    r.worst_ratio = std::max(r.worst_ratio, chi_remainder(x, u, t) / eps);
  };
  for (int k = 0; k < 16; ++k) sample(0.5 * r.delta, 2.0 * std::numbers::pi * k / 16.0);
  for (int k = 0; k < 8; ++k) sample(0.999 * r.delta, 2.0 * std::numbers::pi * (k + 0.5) / 8.0);
  r.ok = r.worst_ratio < 1.0;
  return r;
}

}  // namespace holocurve
