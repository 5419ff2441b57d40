#pragma once

// Finite-dimensional building blocks: complex vectors with l^p norms, the
// symmetric time interval, uniform grids anchored at its center, sampled
// curves and box-shaped domains I x B(center, radius).

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <vector>

namespace holocurve {

using Complex = std::complex<double>;

inline constexpr double kDefaultNormP = 2.0;

class CVector {
 public:
  CVector() = default;
  explicit CVector(std::size_t n) : entries_(n) {}
  CVector(std::initializer_list<Complex> values) : entries_(values) {}
  explicit CVector(std::vector<Complex> values) : entries_(std::move(values)) {}

  static CVector zeros(std::size_t n) { return CVector(n); }
  /// e_index scaled by `scale`.
  static CVector unit(std::size_t n, std::size_t index, Complex scale = 1.0);

  std::size_t size() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }

  Complex& operator[](std::size_t i) { return entries_[i]; }
  const Complex& operator[](std::size_t i) const { return entries_[i]; }

  std::span<const Complex> entries() const noexcept { return entries_; }
  auto begin() const noexcept { return entries_.begin(); }
  auto end() const noexcept { return entries_.end(); }

  bool all_finite() const noexcept;

  CVector& operator+=(const CVector& rhs);
  CVector& operator-=(const CVector& rhs);
  CVector& operator*=(Complex s);

  friend bool operator==(const CVector&, const CVector&) = default;

 private:
  std::vector<Complex> entries_;
};

CVector operator+(CVector lhs, const CVector& rhs);
CVector operator-(CVector lhs, const CVector& rhs);
CVector operator-(CVector v);
CVector operator*(Complex s, CVector v);
CVector operator*(CVector v, Complex s);

/// (sum_i |v_i|^p)^(1/p) for 1 <= p < inf; throws ParameterError otherwise.
double norm(double p, const CVector& v);

/// Throws ParameterError unless 1 <= p < inf.
void check_norm_exponent(double p);

/// I = [t0 - A, t0 + A] with A > 0.
class Interval {
 public:
  Interval(double t0, double half_width);

  double t0() const noexcept { return t0_; }
  double half_width() const noexcept { return half_width_; }
  double lo() const noexcept { return t0_ - half_width_; }
  double hi() const noexcept { return t0_ + half_width_; }
  double length() const noexcept { return 2.0 * half_width_; }

  /// Membership with a relative slack of 1e-12 * A for rounding in grid arithmetic.
  bool contains(double t) const noexcept;

  friend bool operator==(const Interval&, const Interval&) = default;

 private:
  double t0_;
  double half_width_;
};

/// Uniform grid over an interval with an odd node count, so t0 is the middle node.
class Grid {
 public:
  Grid(Interval interval, std::size_t m_grid);

  const Interval& interval() const noexcept { return interval_; }
  std::size_t size() const noexcept { return nodes_.size(); }
  double spacing() const noexcept { return spacing_; }
  std::size_t center_index() const noexcept { return nodes_.size() / 2; }
  double operator[](std::size_t k) const { return nodes_[k]; }
  std::span<const double> nodes() const noexcept { return nodes_; }

  friend bool operator==(const Grid& a, const Grid& b) { return a.interval_ == b.interval_ && a.size() == b.size(); }

 private:
  Interval interval_;
  double spacing_;
  std::vector<double> nodes_;
};

/// A continuous curve I -> C^n sampled on a grid, optionally with derivative
/// samples (then it stands for a C^1 curve).
class Curve {
 public:
  Curve(Grid grid, std::vector<CVector> values, std::optional<std::vector<CVector>> derivs = std::nullopt);

  static Curve constant(const Grid& grid, const CVector& value);
  template <class Fn>
  static Curve sample(const Grid& grid, Fn&& fn) {
    std::vector<CVector> values;
    values.reserve(grid.size());
    for (double t : grid.nodes()) values.push_back(fn(t));
    return Curve(grid, std::move(values));
  }

  const Grid& grid() const noexcept { return grid_; }
  std::size_t size() const noexcept { return values_.size(); }
  std::size_t dimension() const noexcept { return values_.front().size(); }
  const CVector& operator[](std::size_t k) const { return values_[k]; }
  std::span<const CVector> values() const noexcept { return values_; }

  bool has_derivs() const noexcept { return derivs_.has_value(); }
  std::span<const CVector> derivs() const;
  Curve with_derivs(std::vector<CVector> derivs) const;
  Curve without_derivs() const { return Curve(grid_, values_); }

  Curve& operator+=(const Curve& rhs);
  Curve& operator-=(const Curve& rhs);
  Curve& operator*=(Complex s);

 private:
  Grid grid_;
  std::vector<CVector> values_;
  std::optional<std::vector<CVector>> derivs_;
};

Curve operator+(Curve lhs, const Curve& rhs);
Curve operator-(Curve lhs, const Curve& rhs);
Curve operator*(Complex s, Curve c);

/// max over grid nodes of norm(p, c(t)).
double sup_norm(const Curve& c, double p = kDefaultNormP);

/// Cubic (four-point Lagrange) interpolation between nodes; exact at nodes.
/// Throws DomainError for t outside the grid's interval.
CVector eval(const Curve& c, double t);

/// O = I x B(center, radius) measured in the l^p norm.
class Box {
 public:
  Box(Interval interval, CVector center, double radius, double norm_p = kDefaultNormP);

  const Interval& interval() const noexcept { return interval_; }
  const CVector& center() const noexcept { return center_; }
  double radius() const noexcept { return radius_; }
  double norm_p() const noexcept { return norm_p_; }
  std::size_t dimension() const noexcept { return center_.size(); }

  /// radius - norm(xi - center); negative outside the ball.
  double margin(const CVector& xi) const;
  /// Closed-ball membership together with t in I.
  bool contains(double t, const CVector& xi) const;

 private:
  Interval interval_;
  CVector center_;
  double radius_;
  double norm_p_;
};

}  // namespace holocurve
