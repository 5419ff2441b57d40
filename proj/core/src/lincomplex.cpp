#include "holocurve/lincomplex.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "holocurve/errors.hpp"

namespace holocurve {

namespace {

void require_same_size(std::size_t a, std::size_t b) {
  if (a != b) {
    std::ostringstream os;
    os << "dimension mismatch: " << a << " vs " << b;
    throw ParameterError(os.str());
  }
}

}  // namespace

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::Parameter: return "parameter";
    case ErrorKind::Domain: return "domain";
    case ErrorKind::Degenerate: return "degenerate-domain";
    case ErrorKind::Evaluation: return "evaluation";
    case ErrorKind::Parse: return "parse";
    case ErrorKind::Convergence: return "convergence";
  }
  return "unknown";
}

ParseError::ParseError(const std::string& message, int line, int column)
    : Error(ErrorKind::Parse, std::to_string(line) + ":" + std::to_string(column) + ": " + message),
      message_(message),
      line_(line),
      column_(column) {}

// ---------------------------------------------------------------- CVector

CVector CVector::unit(std::size_t n, std::size_t index, Complex scale) {
  if (index >= n) throw ParameterError("unit vector index out of range");
  CVector v(n);
  v[index] = scale;
  return v;
}

bool CVector::all_finite() const noexcept {
  return std::all_of(entries_.begin(), entries_.end(),
                     [](const Complex& z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); });
}

CVector& CVector::operator+=(const CVector& rhs) {
  require_same_size(size(), rhs.size());
  for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] += rhs.entries_[i];
  return *this;
}

CVector& CVector::operator-=(const CVector& rhs) {
  require_same_size(size(), rhs.size());
  for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] -= rhs.entries_[i];
  return *this;
}

CVector& CVector::operator*=(Complex s) {
  for (auto& z : entries_) z *= s;
  return *this;
}

CVector operator+(CVector lhs, const CVector& rhs) { return lhs += rhs; }
CVector operator-(CVector lhs, const CVector& rhs) { return lhs -= rhs; }
CVector operator-(CVector v) { return v *= -1.0; }
CVector operator*(Complex s, CVector v) { return v *= s; }
CVector operator*(CVector v, Complex s) { return v *= s; }

void check_norm_exponent(double p) {
  if (!(p >= 1.0) || !std::isfinite(p)) {
    std::ostringstream os;
    os << "norm exponent must satisfy 1 <= p < inf, got " << p;
    throw ParameterError(os.str());
  }
}

double norm(double p, const CVector& v) {
  check_norm_exponent(p);
  double largest = 0.0;
  for (const auto& z : v) largest = std::max(largest, std::abs(z));
  if (largest == 0.0) return 0.0;
  if (p == 1.0) {
    double sum = 0.0;
    for (const auto& z : v) sum += std::abs(z);
    return sum;
  }
  // Scaled by the largest modulus so high exponents do not overflow.
  double sum = 0.0;
  for (const auto& z : v) sum += std::pow(std::abs(z) / largest, p);
  return largest * std::pow(sum, 1.0 / p);
}

// ------------------------------------------------------ Interval and Grid

Interval::Interval(double t0, double half_width) : t0_(t0), half_width_(half_width) {
  if (!std::isfinite(t0) || !(half_width > 0.0) || !std::isfinite(half_width)) {
    throw ParameterError("interval needs finite t0 and half-width A > 0");
  }
}

bool Interval::contains(double t) const noexcept {
  const double slack = 1e-12 * half_width_;
  return t >= lo() - slack && t <= hi() + slack;
}

Grid::Grid(Interval interval, std::size_t m_grid) : interval_(interval), spacing_(0.0) {
  if (m_grid < 3 || m_grid % 2 == 0) {
    throw ParameterError("grid node count must be odd and at least 3, got " + std::to_string(m_grid));
  }
  const std::size_t half = m_grid / 2;
  spacing_ = interval.half_width() / static_cast<double>(half);
  nodes_.resize(m_grid);
  // Built outward from t0 so the middle node is t0 bitwise and the ends are exact.
  nodes_[half] = interval.t0();
  for (std::size_t k = 1; k < half; ++k) {
    const double offset = interval.half_width() * static_cast<double>(k) / static_cast<double>(half);
    nodes_[half + k] = interval.t0() + offset;
    nodes_[half - k] = interval.t0() - offset;
  }
  nodes_.front() = interval.lo();
  nodes_.back() = interval.hi();
}

// ------------------------------------------------------------------ Curve

Curve::Curve(Grid grid, std::vector<CVector> values, std::optional<std::vector<CVector>> derivs)
    : grid_(std::move(grid)), values_(std::move(values)), derivs_(std::move(derivs)) {
  if (values_.size() != grid_.size()) throw ParameterError("curve needs exactly one value per grid node");
  const std::size_t n = values_.front().size();
  for (const auto& v : values_) require_same_size(v.size(), n);
  if (derivs_) {
    if (derivs_->size() != grid_.size()) throw ParameterError("curve derivative samples must match the grid");
    for (const auto& d : *derivs_) require_same_size(d.size(), n);
  }
}

Curve Curve::constant(const Grid& grid, const CVector& value) {
  return Curve(grid, std::vector<CVector>(grid.size(), value));
}

std::span<const CVector> Curve::derivs() const {
  if (!derivs_) throw ParameterError("curve carries no derivative samples");
  return *derivs_;
}

Curve Curve::with_derivs(std::vector<CVector> derivs) const { return Curve(grid_, values_, std::move(derivs)); }

Curve& Curve::operator+=(const Curve& rhs) {
  if (!(grid_ == rhs.grid_)) throw ParameterError("curves live on different grids");
  for (std::size_t k = 0; k < values_.size(); ++k) values_[k] += rhs.values_[k];
  derivs_.reset();
  return *this;
}

Curve& Curve::operator-=(const Curve& rhs) {
  if (!(grid_ == rhs.grid_)) throw ParameterError("curves live on different grids");
  for (std::size_t k = 0; k < values_.size(); ++k) values_[k] -= rhs.values_[k];
  derivs_.reset();
  return *this;
}

Curve& Curve::operator*=(Complex s) {
  for (auto& v : values_) v *= s;
  if (derivs_) {
    for (auto& d : *derivs_) d *= s;
  }
  return *this;
}

Curve operator+(Curve lhs, const Curve& rhs) { return lhs += rhs; }
Curve operator-(Curve lhs, const Curve& rhs) { return lhs -= rhs; }
Curve operator*(Complex s, Curve c) { return c *= s; }

double sup_norm(const Curve& c, double p) {
  double best = 0.0;
  for (const auto& v : c.values()) best = std::max(best, norm(p, v));
  return best;
}

CVector eval(const Curve& c, double t) {
  const Grid& grid = c.grid();
  if (!grid.interval().contains(t)) {
    const double dist = std::max(grid.interval().lo() - t, t - grid.interval().hi());
    throw DomainError("curve evaluated outside its interval", t, dist);
  }
  const std::size_t m = grid.size();
  const double h = grid.spacing();
  const double pos = (t - grid.interval().lo()) / h;
  auto k = static_cast<std::ptrdiff_t>(std::floor(pos));
  k = std::clamp<std::ptrdiff_t>(k, 0, static_cast<std::ptrdiff_t>(m) - 1);
  if (grid[static_cast<std::size_t>(k)] == t) return c[static_cast<std::size_t>(k)];
  if (static_cast<std::size_t>(k) + 1 < m && grid[static_cast<std::size_t>(k) + 1] == t) {
    return c[static_cast<std::size_t>(k) + 1];
  }

  const std::size_t width = std::min<std::size_t>(4, m);
  std::ptrdiff_t first = k - 1;
  first = std::clamp<std::ptrdiff_t>(first, 0, static_cast<std::ptrdiff_t>(m - width));

  CVector out(c.dimension());
  for (std::size_t a = 0; a < width; ++a) {
    const std::size_t ia = static_cast<std::size_t>(first) + a;
    double weight = 1.0;
    for (std::size_t b = 0; b < width; ++b) {
      if (b == a) continue;
      const std::size_t ib = static_cast<std::size_t>(first) + b;
      weight *= (t - grid[ib]) / (grid[ia] - grid[ib]);
    }
    out += weight * c[ia];
  }
  return out;
}

// -------------------------------------------------------------------- Box

Box::Box(Interval interval, CVector center, double radius, double norm_p)
    : interval_(interval), center_(std::move(center)), radius_(radius), norm_p_(norm_p) {
  check_norm_exponent(norm_p);
  if (!(radius > 0.0) || !std::isfinite(radius)) throw ParameterError("box radius must be finite and > 0");
  if (center_.empty()) throw ParameterError("box center must have dimension >= 1");
}

double Box::margin(const CVector& xi) const { return radius_ - norm(norm_p_, xi - center_); }

bool Box::contains(double t, const CVector& xi) const { return interval_.contains(t) && margin(xi) >= 0.0; }

}  // namespace holocurve
