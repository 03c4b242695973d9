#include "dbtwell/wells.hpp"

#include <cmath>

namespace dbtwell {

std::string_view to_string(WellKind kind) {
  switch (kind) {
    case WellKind::SingleWell:
      return "SingleWell";
    case WellKind::DoubleWellGroundAboveSeparatrix:
      return "DoubleWellGroundAboveSeparatrix";
    case WellKind::DoubleWellGroundBelowSeparatrix:
      return "DoubleWellGroundBelowSeparatrix";
    case WellKind::Boundary:
      return "Boundary";
  }
  return "Unknown";
}

WellKind well_kind(FactorizationEnergy eps) {
  const double e = eps.value();
  if (e == -3.0 || e == -2.0) return WellKind::Boundary;
  if (e < -3.0) return WellKind::SingleWell;
  if (e < -2.0) return WellKind::DoubleWellGroundAboveSeparatrix;
  return WellKind::DoubleWellGroundBelowSeparatrix;
}

RealWave density(const RealWave& psi) {
  RealWave rho(psi.grid);
  for (std::size_t i = 0; i < rho.size(); ++i) rho.samples[i] = psi[i] * psi[i];
  return rho;
}

int count_density_maxima(const RealWave& rho) {
  int maxima = 0;
  int last_sign = 0;
  for (std::size_t i = 0; i + 1 < rho.size(); ++i) {
    const double d = rho[i + 1] - rho[i];
    const int sign = d > kPlateauTolerance ? 1 : (d < -kPlateauTolerance ? -1 : 0);
    if (sign == 0) continue;
    if (sign < 0 && last_sign > 0) ++maxima;
    last_sign = sign;
  }
  return maxima;
}

WellClassification classify(double epsilon, const Grid& grid) {
  const FactorizationEnergy eps(epsilon);
  const RealWave rho = density(ground_state(eps, grid));
  return WellClassification{epsilon, well_kind(eps), separatrix_energy(eps),
                            curvature_at_origin(eps), count_density_maxima(rho)};
}

BimodalityCheck check_bimodality_relation(FactorizationEnergy eps, const Grid& grid) {
  const RealWave rho = density(ground_state(eps, grid));
  const std::size_t c = grid.center();
  const double h = grid.spacing();
  const double lhs =
      (-rho[c - 2] + 16.0 * rho[c - 1] - 30.0 * rho[c] + 16.0 * rho[c + 1] - rho[c + 2]) /
      (12.0 * h * h);
  const double rhs = 2.0 * (separatrix_energy(eps) - eps.value()) * rho[c];
  const double rel_err = rhs != 0.0 ? std::abs(lhs - rhs) / std::abs(rhs) : std::abs(lhs);
  return BimodalityCheck{lhs, rhs, rel_err};
}

}  // namespace dbtwell
