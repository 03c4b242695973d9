#include "dbtwell/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <limits>
#include <map>
#include <optional>
#include <sstream>
#include <thread>

#include "dbtwell/core.hpp"
#include "dbtwell/dynamics.hpp"
#include "dbtwell/errors.hpp"
#include "dbtwell/io.hpp"
#include "dbtwell/oracle.hpp"
#include "dbtwell/wells.hpp"

namespace dbtwell::cli {

using nlohmann::json;

namespace {

// Pass thresholds for `verify`.
constexpr double kEnergyTolerance = 1e-4;
constexpr double kResidualTolerance = 1e-4;
constexpr double kOverlapDefect = 1e-8;
constexpr double kIntertwiningTolerance = 1e-4;
constexpr double kBimodalityRelTolerance = 1e-5;
constexpr double kBimodalityAbsTolerance = 1e-6;

const std::vector<std::pair<SweepQuantity, std::string>>& quantity_names() {
  static const std::vector<std::pair<SweepQuantity, std::string>> names = {
      {SweepQuantity::Separatrix, "separatrix"}, {SweepQuantity::Curvature, "curvature"},
      {SweepQuantity::Gap, "gap"},               {SweepQuantity::MaximaCount, "maxima_count"},
      {SweepQuantity::E0Error, "e0_error"},      {SweepQuantity::E1Error, "e1_error"},
  };
  return names;
}

std::string quantity_name(SweepQuantity q) {
  for (const auto& [k, v] : quantity_names()) {
    if (k == q) return v;
  }
  return "?";
}

std::string human(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

void emit_columns(const RunConfig& config, std::span<const io::Column> columns,
                  std::span<const std::string> footer, std::ostream& os) {
  if (config.format == OutputFormat::Csv) {
    io::write_csv(os, columns, footer);
    return;
  }
  json j = json::object();
  for (const io::Column& c : columns) j[c.name] = c.values;
  if (!footer.empty()) j["comments"] = std::vector<std::string>(footer.begin(), footer.end());
  os << j.dump(2) << '\n';
}

json report_json(const SpectrumReport& r) {
  return json{{"epsilon", r.epsilon},
              {"e0_analytic", r.e0_analytic},
              {"e1_analytic", r.e1_analytic},
              {"e0_numeric", r.e0_numeric},
              {"e1_numeric", r.e1_numeric},
              {"e0_error", r.e0_error},
              {"e1_error", r.e1_error},
              {"psi0_residual", r.psi0_residual},
              {"psi1_residual", r.psi1_residual},
              {"psi0_overlap", r.psi0_overlap},
              {"psi1_overlap", r.psi1_overlap},
              {"bound_state_count", r.bound_state_count}};
}

}  // namespace

std::vector<SweepQuantity> parse_quantities(const std::string& list) {
  std::vector<bool> wanted(quantity_names().size(), false);
  std::stringstream ss(list);
  std::string item;
  bool any = false;
  while (std::getline(ss, item, ',')) {
    item.erase(std::remove_if(item.begin(), item.end(), ::isspace), item.end());
    if (item.empty()) continue;
    bool found = false;
    for (std::size_t i = 0; i < quantity_names().size(); ++i) {
      if (quantity_names()[i].second == item) {
        wanted[i] = true;
        found = any = true;
      }
    }
    if (!found) throw std::invalid_argument("unknown sweep quantity '" + item + "'");
  }
  if (!any) throw std::invalid_argument("no sweep quantities requested");
  std::vector<SweepQuantity> out;
  for (std::size_t i = 0; i < wanted.size(); ++i) {
    if (wanted[i]) out.push_back(quantity_names()[i].first);
  }
  return out;
}

void cmd_potential(const RunConfig& config, std::ostream& os) {
  const FactorizationEnergy eps(config.epsilon);
  const PotentialCurve pot = sample_potential(eps, config.grid());
  const io::Column cols[] = {{"x", pot.grid.nodes()}, {"V", pot.values}};
  emit_columns(config, cols, {}, os);
}

void cmd_states(const RunConfig& config, std::ostream& os) {
  const FactorizationEnergy eps(config.epsilon);
  const Grid grid = config.grid();
  const PotentialCurve pot = sample_potential(eps, grid);
  const RealWave psi0 = ground_state(eps, grid);
  const RealWave psi1 = excited_state(eps, grid);
  const RealWave rho0 = density(psi0);
  const io::Column cols[] = {{"x", grid.nodes()},
                             {"V", pot.values},
                             {"psi0", psi0.samples},
                             {"psi1", psi1.samples},
                             {"rho0", rho0.samples}};
  emit_columns(config, cols, {}, os);
}

bool cmd_verify(const RunConfig& config, std::ostream& os) {
  const FactorizationEnergy eps(config.epsilon);
  const Grid grid = config.grid();
  const SpectrumReport report = verify_spectrum(eps, grid);

  const RealWave bump = sample(grid, [](double x) { return std::exp(-x * x); });
  const double intertwining_bump = check_intertwining(eps, bump);
  const double intertwining_phi0 = check_intertwining(eps, base_ground_state(grid));
  const BimodalityCheck bimodal = check_bimodality_relation(eps, grid);

  const bool energies_ok = report.e0_error < kEnergyTolerance && report.e1_error < kEnergyTolerance;
  const bool residuals_ok =
      report.psi0_residual < kResidualTolerance && report.psi1_residual < kResidualTolerance;
  const bool overlaps_ok = 1.0 - report.psi0_overlap < kOverlapDefect &&
                           1.0 - report.psi1_overlap < kOverlapDefect;
  const bool intertwining_ok =
      intertwining_bump < kIntertwiningTolerance && intertwining_phi0 < kIntertwiningTolerance;
  const bool bimodality_ok = bimodal.rel_err < kBimodalityRelTolerance ||
                             std::abs(bimodal.lhs - bimodal.rhs) < kBimodalityAbsTolerance;
  const bool passed = energies_ok && residuals_ok && overlaps_ok && intertwining_ok && bimodality_ok;

  json j = report_json(report);
  j["gap_analytic"] = report.e1_analytic - report.e0_analytic;
  j["gap_numeric"] = report.e1_numeric - report.e0_numeric;
  j["intertwining_residual"] = std::max(intertwining_bump, intertwining_phi0);
  j["bimodality"] = {{"lhs", bimodal.lhs}, {"rhs", bimodal.rhs}, {"rel_err", bimodal.rel_err}};
  j["grid"] = {{"x_max", grid.x_max()}, {"n_points", grid.size()}};
  j["checks"] = {{"energies", energies_ok},         {"residuals", residuals_ok},
                 {"overlaps", overlaps_ok},         {"intertwining", intertwining_ok},
                 {"bimodality", bimodality_ok}};
  j["passed"] = passed;
  os << j.dump(2) << '\n';
  return passed;
}

void cmd_classify(const RunConfig& config, std::ostream& os) {
  const WellClassification c = classify(config.epsilon, config.grid());
  std::string verdict;
  switch (c.kind) {
    case WellKind::DoubleWellGroundBelowSeparatrix:
      verdict = "double well; ground BELOW separatrix";
      break;
    case WellKind::DoubleWellGroundAboveSeparatrix:
      verdict = "double well; ground ABOVE separatrix";
      break;
    case WellKind::SingleWell:
      verdict = "not a double well";
      break;
    case WellKind::Boundary:
      verdict = c.epsilon == -3.0 ? "boundary; double-well threshold (zero curvature)"
                                  : "boundary; ground level AT separatrix";
      break;
  }
  verdict += "; s=" + human(c.separatrix) + "; curvature=" + human(c.curvature_origin) +
             "; maxima=" + std::to_string(c.density_maxima_count);
  if (config.format == OutputFormat::Json) {
    const json j{{"epsilon", c.epsilon},
                 {"kind", std::string(to_string(c.kind))},
                 {"separatrix", c.separatrix},
                 {"curvature_origin", c.curvature_origin},
                 {"density_maxima_count", c.density_maxima_count},
                 {"verdict", verdict}};
    os << j.dump(2) << '\n';
  } else {
    os << verdict << '\n';
  }
}

void cmd_evolve(const RunConfig& config, double t_max, std::size_t frames, std::ostream& os) {
  const FactorizationEnergy eps(config.epsilon);
  const OscillationSeries s = evolve_series(eps, config.grid(), t_max, frames);
  std::vector<std::string> footer;
  const WellKind kind = well_kind(eps);
  if (kind != WellKind::DoubleWellGroundBelowSeparatrix) {
    footer.push_back(
        "warning: ground level not below the separatrix; no low-lying two-level "
        "approximation applies");
  }
  footer.push_back("analytic_period=" + io::format_number(s.analytic_period));
  const io::Column cols[] = {{"t", s.times}, {"P_left", s.left_probability}};
  emit_columns(config, cols, footer, os);
}

std::size_t cmd_sweep(const SweepConfig& config, std::ostream& os, std::ostream& warnings) {
  if (config.steps == 0) throw std::invalid_argument("sweep needs at least one step");
  if (!(config.eps_start < config.eps_end)) {
    throw InvalidEpsilon("sweep needs eps_start < eps_end");
  }
  // validates the upper end (epsilon < -1)
  (void)FactorizationEnergy(config.eps_end);
  (void)FactorizationEnergy(config.eps_start);
  const Grid grid(config.x_max, config.n_points);

  const std::size_t n = config.steps;
  std::vector<double> eps_values(n);
  for (std::size_t i = 0; i < n; ++i) {
    eps_values[i] = n == 1 ? config.eps_start
                           : config.eps_start + (config.eps_end - config.eps_start) *
                                                    static_cast<double>(i) /
                                                    static_cast<double>(n - 1);
  }
  if (n > 1) eps_values.back() = config.eps_end;

  const double nan = std::numeric_limits<double>::quiet_NaN();
  const std::size_t nq = config.quantities.size();
  std::vector<std::vector<double>> table(nq, std::vector<double>(n, nan));
  std::vector<std::string> row_errors(n);

  auto compute_row = [&](std::size_t i) {
    const FactorizationEnergy eps(eps_values[i]);
    std::optional<SpectrumReport> report;
    for (std::size_t q = 0; q < nq; ++q) {
      try {
        switch (config.quantities[q]) {
          case SweepQuantity::Separatrix:
            table[q][i] = separatrix_energy(eps);
            break;
          case SweepQuantity::Curvature:
            table[q][i] = curvature_at_origin(eps);
            break;
          case SweepQuantity::Gap:
            table[q][i] = -1.0 - eps.value();
            break;
          case SweepQuantity::MaximaCount:
            table[q][i] = count_density_maxima(density(ground_state(eps, grid)));
            break;
          case SweepQuantity::E0Error:
          case SweepQuantity::E1Error:
            if (!report) report = verify_spectrum(eps, grid);
            table[q][i] = config.quantities[q] == SweepQuantity::E0Error ? report->e0_error
                                                                         : report->e1_error;
            break;
        }
      } catch (const Error& e) {
        if (row_errors[i].empty()) row_errors[i] = e.what();
      }
    }
  };

  std::atomic<std::size_t> next{0};
  const unsigned workers =
      std::max(1u, std::min<unsigned>(std::thread::hardware_concurrency(), static_cast<unsigned>(n)));
  {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < n; i = next++) compute_row(i);
      });
    }
  }

  std::size_t failed = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (!row_errors[i].empty()) {
      ++failed;
      warnings << "warning: sweep row epsilon=" << io::format_number(eps_values[i])
               << " failed: " << row_errors[i] << '\n';
    }
  }

  std::vector<io::Column> cols;
  cols.push_back({"epsilon", eps_values});
  for (std::size_t q = 0; q < nq; ++q) cols.push_back({quantity_name(config.quantities[q]), table[q]});
  io::write_csv(os, cols);
  return failed;
}

namespace {

struct SharedFlags {
  std::optional<double> epsilon;
  std::optional<double> x_max;
  std::optional<std::size_t> points;
  std::optional<std::string> out;
  std::optional<std::string> format;
  std::string config;
  bool svg = false;
  // evolve
  std::optional<double> t_max;
  std::optional<std::size_t> frames;
  // sweep
  std::optional<double> eps_start;
  std::optional<double> eps_end;
  std::optional<std::size_t> steps;
  std::optional<std::string> quantities;
};

class Settings {
 public:
  Settings(const SharedFlags& flags, std::map<std::string, std::string> file)
      : flags_(flags), file_(std::move(file)) {}

  template <class T>
  std::optional<T> get(const std::optional<T>& flag, const std::string& key) const {
    if (flag) return flag;
    const auto it = file_.find(key);
    if (it == file_.end()) return std::nullopt;
    if constexpr (std::is_same_v<T, std::string>) {
      return it->second;
    } else if constexpr (std::is_same_v<T, double>) {
      return io::parse_number(it->second);
    } else {
      std::size_t v = 0;
      std::istringstream is(it->second);
      if (!(is >> v) || !is.eof()) throw std::invalid_argument("bad integer for " + key);
      return v;
    }
  }

 private:
  const SharedFlags& flags_;
  std::map<std::string, std::string> file_;
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void add_shared(CLI::App* sub, SharedFlags& f) {
  sub->add_option("--epsilon,-e", f.epsilon, "factorization energy (must be < -1)");
  sub->add_option("--x-max", f.x_max, "grid half-width (default 20)");
  sub->add_option("--points", f.points, "odd number of grid nodes (default 4001)");
  sub->add_option("--out,-o", f.out, "output file (default: standard output)");
  sub->add_option("--format", f.format, "csv or json");
  sub->add_option("--config", f.config, "key=value file; flags take precedence");
}

OutputFormat parse_format(const std::optional<std::string>& s, OutputFormat fallback) {
  if (!s) return fallback;
  if (*s == "csv") return OutputFormat::Csv;
  if (*s == "json") return OutputFormat::Json;
  throw UsageError("--format must be csv or json, got '" + *s + "'");
}

RunConfig make_run_config(const Settings& s, const SharedFlags& f, OutputFormat default_format) {
  RunConfig c;
  const auto eps = s.get(f.epsilon, "epsilon");
  if (!eps) throw UsageError("--epsilon is required");
  c.epsilon = *eps;
  if (auto v = s.get(f.x_max, "x-max")) c.x_max = *v;
  if (auto v = s.get(f.points, "points")) c.n_points = *v;
  if (auto v = s.get(f.out, "out")) c.output_path = *v;
  c.format = parse_format(s.get(f.format, "format"), default_format);
  (void)c.grid();  // InvalidGrid surfaces as a usage error
  return c;
}

void write_output(const std::string& path, const std::string& content, std::ostream& out) {
  if (path.empty()) {
    out << content;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw UsageError("cannot open output file '" + path + "'");
  f << content;
}

void write_svg(const RunConfig& c, const std::string& content, const char* xname, const char* yname) {
  if (c.output_path.empty()) throw UsageError("--svg requires --out");
  std::istringstream is(content);
  const io::CsvTable t = io::read_csv(is);
  const std::string svg = io::render_svg_polyline(t.column(xname), t.column(yname), xname, yname);
  std::filesystem::path p(c.output_path);
  p.replace_extension(".svg");
  std::ofstream f(p, std::ios::binary);
  if (!f) throw UsageError("cannot open SVG file '" + p.string() + "'");
  f << svg;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exactly soluble shallow double wells from a Darboux transform of -2 sech^2 x"};
  app.require_subcommand(1);
  SharedFlags flags;

  auto* potential_cmd = app.add_subcommand("potential", "tabulate V_eps(x) as x,V");
  add_shared(potential_cmd, flags);
  potential_cmd->add_flag("--svg", flags.svg, "also write an SVG plot next to --out");

  auto* states_cmd = app.add_subcommand("states", "tabulate x,V,psi0,psi1,rho0");
  add_shared(states_cmd, flags);

  auto* verify_cmd = app.add_subcommand("verify", "compare analytic spectrum with the oracle");
  add_shared(verify_cmd, flags);

  auto* classify_cmd = app.add_subcommand("classify", "one-line well classification");
  add_shared(classify_cmd, flags);

  auto* evolve_cmd = app.add_subcommand("evolve", "left-well probability of the two-level superposition");
  add_shared(evolve_cmd, flags);
  evolve_cmd->add_option("--t-max", flags.t_max, "final time (default 3 periods)");
  evolve_cmd->add_option("--frames", flags.frames, "number of frames (default 601)");
  evolve_cmd->add_flag("--svg", flags.svg, "also write an SVG plot next to --out");

  auto* sweep_cmd = app.add_subcommand("sweep", "tabulate quantities over a range of epsilon");
  add_shared(sweep_cmd, flags);
  sweep_cmd->add_option("--eps-start", flags.eps_start, "first epsilon");
  sweep_cmd->add_option("--eps-end", flags.eps_end, "last epsilon (< -1)");
  sweep_cmd->add_option("--steps", flags.steps, "number of rows");
  sweep_cmd->add_option("--quantities", flags.quantities,
                        "comma list of separatrix,curvature,gap,maxima_count,e0_error,e1_error");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kPass;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kPass;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kBadArguments;
  }

  try {
    std::map<std::string, std::string> file;
    if (!flags.config.empty()) {
      try {
        file = io::read_config_file(flags.config);
      } catch (const std::runtime_error& e) {
        throw UsageError(e.what());
      }
    }
    const Settings settings(flags, std::move(file));
    std::ostringstream buffer;

    if (*sweep_cmd) {
      SweepConfig sc;
      const auto start = settings.get(flags.eps_start, "eps-start");
      const auto end = settings.get(flags.eps_end, "eps-end");
      const auto steps = settings.get(flags.steps, "steps");
      if (!start || !end || !steps) throw UsageError("sweep needs --eps-start, --eps-end and --steps");
      sc.eps_start = *start;
      sc.eps_end = *end;
      sc.steps = *steps;
      sc.quantities = parse_quantities(
          settings.get(flags.quantities, "quantities")
              .value_or("separatrix,curvature,gap,maxima_count,e0_error,e1_error"));
      if (auto v = settings.get(flags.x_max, "x-max")) sc.x_max = *v;
      if (auto v = settings.get(flags.points, "points")) sc.n_points = *v;
      const std::string path = settings.get(flags.out, "out").value_or("");
      if (parse_format(settings.get(flags.format, "format"), OutputFormat::Csv) != OutputFormat::Csv) {
        throw UsageError("sweep emits csv only");
      }
      (void)Grid(sc.x_max, sc.n_points);
      const std::size_t failed = cmd_sweep(sc, buffer, err);
      if (failed == sc.steps) {
        err << "error: every sweep row failed\n";
        return kSolverFailure;
      }
      write_output(path, buffer.str(), out);
      return kPass;
    }

    if (*classify_cmd) {
      RunConfig c = make_run_config(settings, flags, OutputFormat::Csv);
      cmd_classify(c, buffer);
      write_output(c.output_path, buffer.str(), out);
      return kPass;
    }
    if (*verify_cmd) {
      RunConfig c = make_run_config(settings, flags, OutputFormat::Json);
      if (c.format != OutputFormat::Json) throw UsageError("verify emits json only");
      bool passed = false;
      try {
        passed = cmd_verify(c, buffer);
      } catch (const BoundStateCountMismatch& e) {
        err << "verification failed: " << e.what() << '\n';
        return kVerificationFailed;
      }
      write_output(c.output_path, buffer.str(), out);
      return passed ? kPass : kVerificationFailed;
    }

    RunConfig c = make_run_config(settings, flags, OutputFormat::Csv);
    if (flags.svg && c.format != OutputFormat::Csv) throw UsageError("--svg needs csv output");
    if (flags.svg && c.output_path.empty()) throw UsageError("--svg requires --out");
    if (*potential_cmd) {
      cmd_potential(c, buffer);
      write_output(c.output_path, buffer.str(), out);
      if (flags.svg) write_svg(c, buffer.str(), "x", "V");
    } else if (*states_cmd) {
      cmd_states(c, buffer);
      write_output(c.output_path, buffer.str(), out);
    } else if (*evolve_cmd) {
      const FactorizationEnergy eps(c.epsilon);
      const double t_max = settings.get(flags.t_max, "t-max").value_or(3.0 * oscillation_period(eps));
      const std::size_t frames = settings.get(flags.frames, "frames").value_or(601);
      if (!(t_max > 0.0) || frames < 2) throw UsageError("evolve needs --t-max > 0 and --frames >= 2");
      cmd_evolve(c, t_max, frames, buffer);
      write_output(c.output_path, buffer.str(), out);
      if (flags.svg) write_svg(c, buffer.str(), "t", "P_left");
    }
    return kPass;
  } catch (const InvalidEpsilon& e) {
    err << "error: " << e.what() << '\n';
    return kBadArguments;
  } catch (const InvalidGrid& e) {
    err << "error: " << e.what() << '\n';
    return kBadArguments;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kBadArguments;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kBadArguments;
  } catch (const GridTooNarrow& e) {
    err << "grid error: " << e.what() << '\n';
    return kGridError;
  } catch (const ConvergenceFailure& e) {
    err << "solver failure: " << e.what() << '\n';
    return kSolverFailure;
  } catch (const BoundStateCountMismatch& e) {
    err << "verification failed: " << e.what() << '\n';
    return kVerificationFailed;
  }
}

}  // namespace dbtwell::cli
