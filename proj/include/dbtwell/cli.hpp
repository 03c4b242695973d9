#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "dbtwell/grid.hpp"

namespace dbtwell::cli {

enum ExitCode : int {
  kPass = 0,
  kVerificationFailed = 1,
  kBadArguments = 2,
  kGridError = 3,
  kSolverFailure = 4,
};

enum class OutputFormat { Csv, Json };

struct RunConfig {
  double epsilon = 0.0;
  double x_max = Grid::kDefaultHalfWidth;
  std::size_t n_points = Grid::kDefaultPoints;
  std::string output_path;  // empty: standard output
  OutputFormat format = OutputFormat::Csv;

  Grid grid() const { return Grid(x_max, n_points); }
};

enum class SweepQuantity { Separatrix, Curvature, Gap, MaximaCount, E0Error, E1Error };

struct SweepConfig {
  double eps_start = 0.0;
  double eps_end = 0.0;
  std::size_t steps = 0;
  std::vector<SweepQuantity> quantities;  // canonical order, no duplicates
  double x_max = Grid::kDefaultHalfWidth;
  std::size_t n_points = Grid::kDefaultPoints;
};

/// Parses "separatrix,curvature,..." into canonical order. Throws std::invalid_argument.
std::vector<SweepQuantity> parse_quantities(const std::string& list);

// Each command renders into `os`; failures surface as dbtwell exceptions.
void cmd_potential(const RunConfig& config, std::ostream& os);
void cmd_states(const RunConfig& config, std::ostream& os);
/// Returns true when every tolerance passes.
bool cmd_verify(const RunConfig& config, std::ostream& os);
void cmd_classify(const RunConfig& config, std::ostream& os);
void cmd_evolve(const RunConfig& config, double t_max, std::size_t frames, std::ostream& os);
/// Returns the number of failed rows.
std::size_t cmd_sweep(const SweepConfig& config, std::ostream& os, std::ostream& warnings);

/// Full command-line entry point; returns one of ExitCode.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace dbtwell::cli
