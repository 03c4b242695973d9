#include "dbtwell/core.hpp"

#include <algorithm>
#include <numbers>
#include <sstream>

#include "dbtwell/errors.hpp"

namespace dbtwell {

FactorizationEnergy::FactorizationEnergy(double epsilon) : value_(epsilon), root_(0.0) {
  if (!admissible(epsilon)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "factorization energy must satisfy epsilon < -1 (at most -1 - " << kMargin
        << "), got " << epsilon;
    throw InvalidEpsilon(msg.str());
  }
  root_ = std::sqrt(-epsilon);
}

namespace {

// u, u', u'' at t = |x| >= 0, all sharing the factor exp(log_scale).
struct SeedTerms {
  double u;
  double du;
  double d2u;
  double log_scale;
  double sinh_term;  // sinh(a t) with the same scaling
  double sech2;
  double tanh_t;
};

SeedTerms seed_terms(FactorizationEnergy eps, double t) {
  const double a = eps.root();
  SeedTerms s{};
  double sh = 0.0;
  double ch = 0.0;
  if (t <= kScaledCrossover) {
    sh = std::sinh(a * t);
    ch = std::cosh(a * t);
    s.log_scale = 0.0;
  } else {
    const double q = std::exp(-2.0 * a * t);
    sh = 1.0 - q;
    ch = 1.0 + q;
    s.log_scale = a * t - std::numbers::ln2;
  }
  const double th = std::tanh(t);
  const double c = std::cosh(t);
  const double sech2 = 1.0 / (c * c);
  s.u = sh * th - a * ch;
  s.du = a * ch * th + sh * sech2 - a * a * sh;
  s.d2u = a * a * sh * th + 2.0 * a * ch * sech2 - 2.0 * sh * sech2 * th - a * a * a * ch;
  s.sinh_term = sh;
  s.sech2 = sech2;
  s.tanh_t = th;
  return s;
}

double odd_sign(double x) { return x < 0.0 ? -1.0 : 1.0; }

void require_decay(const RealWave& f, const char* what) {
  double peak = 0.0;
  for (double v : f.samples) peak = std::max(peak, std::abs(v));
  const double edge = std::max(std::abs(f.samples.front()), std::abs(f.samples.back()));
  if (!(edge <= kEdgeDecayTolerance * peak)) {
    std::ostringstream msg;
    msg << what << " has not decayed at x = +/-" << f.grid.x_max() << " (edge/peak = "
        << edge / peak << ", limit " << kEdgeDecayTolerance << "); widen the grid";
    throw GridTooNarrow(msg.str());
  }
}

}  // namespace

ScaledValue seed_function_scaled(FactorizationEnergy eps, double x) {
  const SeedTerms s = seed_terms(eps, std::abs(x));
  return {s.u, s.log_scale};
}

double seed_function(FactorizationEnergy eps, double x) {
  return seed_function_scaled(eps, x).value();
}

double log_derivative_of_seed(FactorizationEnergy eps, double x) {
  const SeedTerms s = seed_terms(eps, std::abs(x));
  return odd_sign(x) * (s.du / s.u);
}

double seed_curvature_ratio(FactorizationEnergy eps, double x) {
  const SeedTerms s = seed_terms(eps, std::abs(x));
  return s.d2u / s.u;
}

double potential(FactorizationEnergy eps, double x) {
  if (x == 0.0) return separatrix_energy(eps);
  const double e = eps.value();
  const SeedTerms s = seed_terms(eps, std::abs(x));
  // -e / u^2 picks up exp(-2 log_scale) relative to the scaled mantissas.
  const double shrink = std::exp(-2.0 * s.log_scale);
  const double numerator = 2.0 * (1.0 + e) * (-e * shrink + s.sech2 * s.sinh_term * s.sinh_term);
  return numerator / (s.u * s.u);
}

double potential_from_log_derivative(FactorizationEnergy eps, double x) {
  const SeedTerms s = seed_terms(eps, std::abs(x));
  const double w = s.du / s.u;
  return 2.0 * w * w - s.d2u / s.u + eps.value();
}

double base_potential(double x) {
  const double c = std::cosh(x);
  return -2.0 / (c * c);
}

PotentialCurve sample_potential(FactorizationEnergy eps, const Grid& grid) {
  std::vector<double> v(grid.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = potential(eps, grid[i]);
  return PotentialCurve{grid, std::move(v), eps};
}

RealWave ground_state(FactorizationEnergy eps, const Grid& grid) {
  RealWave psi = sample(grid, [&](double x) {
    const ScaledValue u = seed_function_scaled(eps, x);
    return std::exp(-u.log_scale) / std::abs(u.mantissa);
  });
  normalize(psi);
  require_decay(psi, "ground state");
  return psi;
}

RealWave base_ground_state(const Grid& grid) {
  RealWave phi = sample(grid, [](double x) { return std::numbers::sqrt2 * 0.5 / std::cosh(x); });
  const double n2 = norm_squared(phi);
  if (!(std::abs(n2 - 1.0) < 1e-10)) {
    std::ostringstream msg;
    msg << "base ground state truncated: norm^2 = " << n2 << " on x_max = " << grid.x_max();
    throw GridTooNarrow(msg.str());
  }
  return phi;
}

RealWave excited_state(FactorizationEnergy eps, const Grid& grid) {
  RealWave psi = sample(grid, [&](double x) {
    const double t = std::abs(x);
    const SeedTerms s = seed_terms(eps, t);
    return odd_sign(x) * (s.tanh_t + s.du / s.u) / std::cosh(t);
  });
  // exact zero at the center node: tanh(0) = 0 and u'(0) = 0
  normalize(psi);
  require_decay(psi, "excited state");
  // sign convention: positive lobe on x > 0
  if (psi[psi.grid.center() + 1] < 0.0) {
    for (double& v : psi.samples) v = -v;
  }
  return psi;
}

namespace {

RealWave first_order_operator(FactorizationEnergy eps, const RealWave& f, double derivative_sign) {
  const std::vector<double> df = first_derivative(f.samples, f.grid.spacing());
  std::vector<double> out(f.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = derivative_sign * df[i] + log_derivative_of_seed(eps, f.grid[i]) * f[i];
  }
  return RealWave(f.grid, std::move(out));
}

}  // namespace

RealWave apply_A(FactorizationEnergy eps, const RealWave& f) {
  return first_order_operator(eps, f, -1.0);
}

RealWave apply_A_dagger(FactorizationEnergy eps, const RealWave& f) {
  return first_order_operator(eps, f, +1.0);
}

}  // namespace dbtwell
