#include "dbtwell/dynamics.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace dbtwell {

double norm_squared(const ComplexWave& psi) {
  std::vector<double> d(psi.samples.size());
  for (std::size_t i = 0; i < d.size(); ++i) d[i] = std::norm(psi.samples[i]);
  return trapezoid(psi.grid, d);
}

double oscillation_period(FactorizationEnergy eps) {
  return 2.0 * std::numbers::pi / std::abs(1.0 + eps.value());
}

LeggettCaldeiraState::LeggettCaldeiraState(FactorizationEnergy eps, const Grid& grid)
    : eps_(eps), psi0_(ground_state(eps, grid)), psi1_(excited_state(eps, grid)) {}

ComplexWave LeggettCaldeiraState::at(double t) const {
  const double r = std::numbers::sqrt2 / 2.0;
  const std::complex<double> p0 = std::polar(r, -eps_.value() * t);
  const std::complex<double> p1 = std::polar(r, t);
  ComplexWave out{psi0_.grid, std::vector<std::complex<double>>(psi0_.size())};
  for (std::size_t i = 0; i < out.samples.size(); ++i) {
    out.samples[i] = p0 * psi0_[i] + p1 * psi1_[i];
  }
  return out;
}

ComplexWave lc_state(FactorizationEnergy eps, const Grid& grid, double t) {
  return LeggettCaldeiraState(eps, grid).at(t);
}

namespace {

template <class Density>
double left_integral(const Grid& grid, Density&& rho) {
  const std::size_t c = grid.center();
  double sum = 0.5 * (rho(0) + rho(c));
  for (std::size_t i = 1; i < c; ++i) sum += rho(i);
  return sum * grid.spacing();
}

}  // namespace

double left_well_probability(const ComplexWave& psi) {
  return left_integral(psi.grid, [&](std::size_t i) { return std::norm(psi.samples[i]); });
}

double left_well_probability(const RealWave& psi) {
  return left_integral(psi.grid, [&](std::size_t i) { return psi[i] * psi[i]; });
}

OscillationSeries evolve_series(FactorizationEnergy eps, const Grid& grid, double t_max,
                                std::size_t n_frames) {
  if (n_frames < 2) throw std::invalid_argument("evolve_series needs at least 2 frames");
  if (!(std::isfinite(t_max) && t_max > 0.0)) {
    throw std::invalid_argument("evolve_series needs a positive t_max");
  }
  const LeggettCaldeiraState state(eps, grid);
  OscillationSeries s{eps.value(), {}, {}, oscillation_period(eps)};
  s.times.resize(n_frames);
  s.left_probability.resize(n_frames);
  const double dt = t_max / static_cast<double>(n_frames - 1);
  for (std::size_t k = 0; k < n_frames; ++k) {
    const double t = k + 1 == n_frames ? t_max : static_cast<double>(k) * dt;
    s.times[k] = t;
    s.left_probability[k] = left_well_probability(state.at(t));
  }
  return s;
}

OscillationFit fit_oscillation(const OscillationSeries& series) {
  const std::size_t n = series.times.size();
  const double w = 2.0 * std::numbers::pi / series.analytic_period;

  // 2x2 normal equations
  double cc = 0.0, cs = 0.0, ss = 0.0, yc = 0.0, ys = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double c = std::cos(w * series.times[k]);
    const double s = std::sin(w * series.times[k]);
    const double y = series.left_probability[k] - 0.5;
    cc += c * c;
    cs += c * s;
    ss += s * s;
    yc += y * c;
    ys += y * s;
  }
  const double det = cc * ss - cs * cs;
  OscillationFit fit{};
  if (det != 0.0) {
    fit.cos_coefficient = (yc * ss - ys * cs) / det;
    fit.sin_coefficient = (ys * cc - yc * cs) / det;
  } else {
    fit.cos_coefficient = yc / cc;
  }
  fit.amplitude = std::hypot(fit.cos_coefficient, fit.sin_coefficient);

  double sq = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double model = fit.cos_coefficient * std::cos(w * series.times[k]) +
                         fit.sin_coefficient * std::sin(w * series.times[k]);
    const double r = series.left_probability[k] - 0.5 - model;
    sq += r * r;
  }
  fit.rms_residual = n > 0 ? std::sqrt(sq / static_cast<double>(n)) : 0.0;

  std::vector<double> crossings;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    const double a = series.left_probability[k] - 0.5;
    const double b = series.left_probability[k + 1] - 0.5;
    if ((a < 0.0 && b >= 0.0) || (a > 0.0 && b <= 0.0)) {
      const double t0 = series.times[k];
      const double t1 = series.times[k + 1];
      crossings.push_back(t0 + (t1 - t0) * a / (a - b));
    }
  }
  fit.crossings = crossings.size();
  fit.crossing_period =
      crossings.size() >= 2
          ? 2.0 * (crossings.back() - crossings.front()) / static_cast<double>(crossings.size() - 1)
          : std::numeric_limits<double>::quiet_NaN();
  return fit;
}

}  // namespace dbtwell
