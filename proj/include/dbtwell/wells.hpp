#pragma once

#include <string_view>

#include "dbtwell/core.hpp"
#include "dbtwell/grid.hpp"

namespace dbtwell {

enum class WellKind {
  SingleWell,                       // eps < -3
  DoubleWellGroundAboveSeparatrix,  // -3 < eps < -2
  DoubleWellGroundBelowSeparatrix,  // -2 < eps < -1
  Boundary,                         // eps == -3 or eps == -2
};

std::string_view to_string(WellKind kind);

struct WellClassification {
  double epsilon;
  WellKind kind;
  double separatrix;
  double curvature_origin;
  int density_maxima_count;
};

/// Interval lookup only; eps must be admissible.
WellKind well_kind(FactorizationEnergy eps);

/// Throws InvalidEpsilon for eps >= -1 - 1e-9, GridTooNarrow if the ground
/// state does not fit on the grid used for the maxima count.
WellClassification classify(double epsilon, const Grid& grid = Grid::standard());

inline constexpr double kPlateauTolerance = 1e-13;

/// Strict local maxima of a sampled density, found from sign changes of the
/// first difference. Differences smaller than kPlateauTolerance count as flat.
int count_density_maxima(const RealWave& rho);

struct BimodalityCheck {
  double lhs;      // 5-point second difference of rho0 at x = 0
  double rhs;      // 2 (s - eps) rho0(0)
  double rel_err;  // |lhs - rhs| / |rhs|, or |lhs| when rhs == 0
};

BimodalityCheck check_bimodality_relation(FactorizationEnergy eps, const Grid& grid);

RealWave density(const RealWave& psi);

}  // namespace dbtwell
