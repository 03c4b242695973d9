#pragma once

#include <cmath>

#include "dbtwell/grid.hpp"

namespace dbtwell {

/// Factorization energy of the transform. Always strictly below the base
/// ground level -1; values within kMargin of -1 are rejected because the
/// transform degenerates to the identity there (V == 0).
class FactorizationEnergy {
 public:
  static constexpr double kMargin = 1e-9;

  explicit FactorizationEnergy(double epsilon);

  static bool admissible(double epsilon) {
    return std::isfinite(epsilon) && epsilon <= -1.0 - kMargin;
  }

  double value() const { return value_; }
  /// sqrt(|epsilon|), the decay rate of the seed function.
  double root() const { return root_; }

  bool operator==(const FactorizationEnergy&) const = default;

 private:
  double value_;
  double root_;
};

/// u(x) represented as mantissa * exp(log_scale). log_scale is zero for
/// |x| <= kScaledCrossover; beyond that the common e^{sqrt|eps| |x|} growth
/// is carried separately so nothing overflows.
struct ScaledValue {
  double mantissa;
  double log_scale;

  double value() const { return mantissa * std::exp(log_scale); }
};

inline constexpr double kScaledCrossover = 30.0;

/// Seed function u(x) = sinh(a x) tanh(x) - a cosh(a x), a = sqrt|eps|.
/// Even and strictly negative. Overflows to -inf once a|x| exceeds ~710;
/// use seed_function_scaled when that matters.
double seed_function(FactorizationEnergy eps, double x);
ScaledValue seed_function_scaled(FactorizationEnergy eps, double x);

/// Superpotential u'/u, from the analytic derivative. Odd in x.
double log_derivative_of_seed(FactorizationEnergy eps, double x);

/// u''/u, from the analytic second derivative (not from the ODE u solves).
double seed_curvature_ratio(FactorizationEnergy eps, double x);

/// Transformed potential in explicit closed form:
///   2(1+e)(-e + sech^2 x sinh^2(a x)) / (tanh x sinh(a x) - a cosh(a x))^2.
/// At x == 0 returns separatrix_energy(eps) exactly.
double potential(FactorizationEnergy eps, double x);

/// Same potential through the superpotential route 2(u'/u)^2 - u''/u + eps.
double potential_from_log_derivative(FactorizationEnergy eps, double x);

/// Base well -2 sech^2 x.
double base_potential(double x);

/// Barrier-top energy V(0) = 2 eps + 2.
inline double separatrix_energy(FactorizationEnergy eps) { return 2.0 * eps.value() + 2.0; }

/// V''(0) = 4(3 + 4 eps + eps^2); negative exactly on the double-well interval (-3, -1).
inline double curvature_at_origin(double epsilon) {
  return 4.0 * (3.0 + 4.0 * epsilon + epsilon * epsilon);
}
inline double curvature_at_origin(FactorizationEnergy eps) {
  return curvature_at_origin(eps.value());
}

struct PotentialCurve {
  Grid grid;
  std::vector<double> values;
  FactorizationEnergy epsilon;
};

PotentialCurve sample_potential(FactorizationEnergy eps, const Grid& grid);

/// Relative edge amplitude above which a bound state counts as not decayed.
inline constexpr double kEdgeDecayTolerance = 1e-6;

/// Normalized ground state |1/u| (energy eps). Even and strictly positive.
/// Throws GridTooNarrow when the state has not decayed at the edges.
RealWave ground_state(FactorizationEnergy eps, const Grid& grid);

/// Normalized ground state sqrt(1/2) sech(x) of the base well (energy -1).
/// Returned without rescaling; throws GridTooNarrow if the truncated norm
/// deviates from one by more than 1e-10.
RealWave base_ground_state(const Grid& grid);

/// Normalized first excited state, proportional to A phi0 = (tanh x + u'/u) phi0.
/// Odd, with a single node at x = 0, and positive for x > 0.
RealWave excited_state(FactorizationEnergy eps, const Grid& grid);

/// A f = -f' + (u'/u) f on the samples of f.
RealWave apply_A(FactorizationEnergy eps, const RealWave& f);

/// A^dagger f = f' + (u'/u) f. Annihilates 1/u.
RealWave apply_A_dagger(FactorizationEnergy eps, const RealWave& f);

/// Samples of an arbitrary function on the grid.
template <class F>
RealWave sample(const Grid& grid, F&& fn) {
  std::vector<double> s(grid.size());
  for (std::size_t i = 0; i < s.size(); ++i) s[i] = fn(grid[i]);
  return RealWave(grid, std::move(s));
}

}  // namespace dbtwell
