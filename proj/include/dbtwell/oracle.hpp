#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "dbtwell/core.hpp"
#include "dbtwell/grid.hpp"

namespace dbtwell {

/// 3-point finite-difference discretization of -d^2/dx^2 + V with Dirichlet
/// walls one step beyond each grid edge.
struct TridiagonalHamiltonian {
  Grid grid;
  std::vector<double> diagonal;  // 2/h^2 + V(x_i)
  double off_diagonal;           // -1/h^2

  /// Number of eigenvalues strictly below lambda (Sturm sequence count).
  std::size_t count_below(double lambda) const;

  std::vector<double> apply(std::span<const double> psi) const;
};

TridiagonalHamiltonian build_hamiltonian(const PotentialCurve& pot);
TridiagonalHamiltonian build_hamiltonian(const Grid& grid, std::span<const double> potential_values);

struct Eigenpair {
  double energy;
  RealWave wave;  // trapezoid-normalized, largest right-half component positive
};

inline constexpr double kBisectionTolerance = 1e-12;
inline constexpr int kMaxBisectionSteps = 200;

/// k lowest eigenpairs (k <= 6) in ascending order. Eigenvalues come from
/// bisection on the Sturm count, eigenvectors from inverse iteration.
std::vector<Eigenpair> lowest_eigenpairs(const TridiagonalHamiltonian& hamiltonian, std::size_t k,
                                         double tolerance = kBisectionTolerance);

/// ||H psi - E psi||_2 / ||psi||_2 over interior nodes (3 excluded at each edge).
double eigen_residual(const TridiagonalHamiltonian& hamiltonian, const RealWave& wave,
                      double energy);

/// Relative max-norm of (Xi A - A eta) f over interior nodes, with every
/// derivative taken from the samples.
double check_intertwining(FactorizationEnergy eps, const RealWave& f);

struct SpectrumReport {
  double epsilon;
  double e0_analytic;
  double e1_analytic;
  double e0_numeric;
  double e1_numeric;
  double e0_error;
  double e1_error;
  double psi0_residual;
  double psi1_residual;
  double psi0_overlap;
  double psi1_overlap;
  std::size_t bound_state_count;
};

/// Compares the analytic levels {eps, -1} and states against the
/// finite-difference oracle. Throws BoundStateCountMismatch unless exactly two
/// eigenvalues lie below zero.
SpectrumReport verify_spectrum(FactorizationEnergy eps, const Grid& grid);

/// Bisection tolerance used for eps; tightened in the near-degenerate band.
double bisection_tolerance_for(FactorizationEnergy eps);

}  // namespace dbtwell
