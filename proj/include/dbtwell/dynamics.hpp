#pragma once

#include <complex>
#include <vector>

#include "dbtwell/core.hpp"
#include "dbtwell/grid.hpp"

namespace dbtwell {

struct ComplexWave {
  Grid grid;
  std::vector<std::complex<double>> samples;
};

double norm_squared(const ComplexWave& psi);

/// Period 2 pi / |1 + eps| of the relative phase between the two levels.
double oscillation_period(FactorizationEnergy eps);

/// Equal-weight superposition of the two bound states, evolved by exact
/// phase rotation: (e^{-i eps t} psi0 + e^{i t} psi1) / sqrt(2).
class LeggettCaldeiraState {
 public:
  LeggettCaldeiraState(FactorizationEnergy eps, const Grid& grid);

  ComplexWave at(double t) const;

  const RealWave& ground() const { return psi0_; }
  const RealWave& excited() const { return psi1_; }
  FactorizationEnergy epsilon() const { return eps_; }

 private:
  FactorizationEnergy eps_;
  RealWave psi0_;
  RealWave psi1_;
};

ComplexWave lc_state(FactorizationEnergy eps, const Grid& grid, double t);

/// Probability on x <= 0, trapezoid rule with half weight at the x = 0 node.
double left_well_probability(const ComplexWave& psi);
double left_well_probability(const RealWave& psi);

struct OscillationSeries {
  double epsilon;
  std::vector<double> times;
  std::vector<double> left_probability;
  double analytic_period;
};

/// P_left at n_frames uniform times in [0, t_max] (both ends included).
OscillationSeries evolve_series(FactorizationEnergy eps, const Grid& grid, double t_max,
                                std::size_t n_frames);

struct OscillationFit {
  // Least-squares fit P - 1/2 = a cos(w t) + b sin(w t), w = |1 + eps|.
  double cos_coefficient;
  double sin_coefficient;
  double amplitude;
  double rms_residual;
  // From linear interpolation of the crossings of P = 1/2.
  std::size_t crossings;
  double crossing_period;  // NaN with fewer than two crossings
};

OscillationFit fit_oscillation(const OscillationSeries& series);

}  // namespace dbtwell
