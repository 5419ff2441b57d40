#pragma once

// The entire function chi(x) = sum_i i x_i^i on (truncated) l^p, which is
// unbounded on the open unit ball, with its variation and the explicit
// continuity and differentiability bounds checked as inequalities.
//
// Truncation: inputs have n coordinates indexed 0..n-1; index 0 contributes
// nothing. Tail terms beyond n are zero, so the cutoff N defined below always
// exists and is at most n.

#include <cstddef>
#include <stdexcept>

#include "holocurve/lincomplex.hpp"

namespace holocurve {

inline constexpr std::size_t kDefaultChiDimension = 64;
/// Coordinates at or past the cutoff must have modulus below this.
inline constexpr double kTailBound = 0.125;

Complex chi(const CVector& x);

/// delta chi(x; u) = sum_i i^2 x_i^{i-1} u_i.
Complex dchi(const CVector& x, const CVector& u);

struct ChiWitness {
  CVector x;
  Complex value;
  std::size_t index = 0;
};

/// Thrown when no index below n reaches the target.
class WitnessUnreachable : public std::runtime_error {
 public:
  WitnessUnreachable(const std::string& what, std::size_t suggested_dimension)
      : std::runtime_error(what), suggested_dimension_(suggested_dimension) {}
  std::size_t suggested_dimension() const noexcept { return suggested_dimension_; }

 private:
  std::size_t suggested_dimension_;
};

/// x = (1 - 1/i) e_i for the smallest i < n with i (1 - 1/i)^i > target.
/// |x| < 1 in every l^p norm. Throws WitnessUnreachable suggesting
/// n = ceil(e * target) + 1 when no such i exists.
ChiWitness unboundedness_witness(double target, std::size_t n);

/// Least N such that |x_i| < 1/8 for every i >= N (N = 0 when all entries qualify).
std::size_t tail_cutoff(const CVector& x);
/// Least N such that |x_i| < 1/8 and |u_i| < 1/8 for every i >= N.
std::size_t tail_cutoff(const CVector& x, const CVector& u);

struct ContinuityCheck {
  double lhs = 0.0;  // |chi(x + u) - chi(x)|
  double rhs = 0.0;  // |u| (N^3 M^{N-2} + 2^{3-N} (1 + N)),  M = 1 + |x|
  bool ok = false;
  std::size_t cutoff = 0;
  double m = 0.0;
};

/// Requires |u| < 1/8 (ParameterError otherwise).
ContinuityCheck continuity_bound_check(const CVector& x, const CVector& u, double norm_p = kDefaultNormP);

struct RemainderCheck {
  /// min{1, M^{-2} (N^3 M^N + 2^7 (1 + N))^{-1} eps},  M = 1 + |x| + |u|.
  double delta = 0.0;
  /// max over sampled 0 < |t| < delta of Delta(t) / eps.
  double worst_ratio = 0.0;
  bool ok = false;
  std::size_t cutoff = 0;
  double m = 0.0;
};

/// Delta(t) = sum_i i |t^{-1}((x_i + t u_i)^i - x_i^i) - i x_i^{i-1} u_i|,
/// evaluated through the exact factorization t u_i^2 sum_j (i-1-j) w^j x^{i-2-j},
/// w = x_i + t u_i, so tiny |t| loses no digits.
double chi_remainder(const CVector& x, const CVector& u, Complex t);

/// Samples t at 16 angles on |t| = delta/2 and 8 directions at |t| = 0.999 delta.
RemainderCheck remainder_bound_check(const CVector& x, const CVector& u, double eps, double norm_p = kDefaultNormP);

}  // namespace holocurve
