#include "dbtwell/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <sstream>
#include <stdexcept>

#include "dbtwell/errors.hpp"

namespace dbtwell {

namespace {

constexpr std::size_t kEdgeNodes = 3;

double interior_norm(std::span<const double> v) {
  double s = 0.0;
  for (std::size_t i = kEdgeNodes; i + kEdgeNodes < v.size(); ++i) s += v[i] * v[i];
  return std::sqrt(s);
}

double interior_max_abs(std::span<const double> v) {
  double m = 0.0;
  for (std::size_t i = kEdgeNodes; i + kEdgeNodes < v.size(); ++i) m = std::max(m, std::abs(v[i]));
  return m;
}

// LU factorization of a tridiagonal matrix with partial pivoting, in the
// layout used by LAPACK's ?gttrf.
class TridiagonalLU {
 public:
  TridiagonalLU(std::span<const double> diag, double off, double shift) {
    const std::size_t n = diag.size();
    d_.resize(n);
    dl_.assign(n - 1, off);
    du_.assign(n - 1, off);
    du2_.assign(n > 2 ? n - 2 : 0, 0.0);
    swapped_.assign(n - 1, false);
    double scale = std::abs(off);
    for (std::size_t i = 0; i < n; ++i) {
      d_[i] = diag[i] - shift;
      scale = std::max(scale, std::abs(diag[i]));
    }
    const double tiny = std::numeric_limits<double>::epsilon() * scale;
    for (std::size_t i = 0; i + 1 < n; ++i) {
      if (std::abs(d_[i]) >= std::abs(dl_[i])) {
        if (d_[i] == 0.0) d_[i] = tiny;
        const double fact = dl_[i] / d_[i];
        dl_[i] = fact;
        d_[i + 1] -= fact * du_[i];
      } else {
        const double fact = d_[i] / dl_[i];
        d_[i] = dl_[i];
        dl_[i] = fact;
        const double temp = du_[i];
        du_[i] = d_[i + 1];
        d_[i + 1] = temp - fact * d_[i + 1];
        if (i + 2 < n) {
          du2_[i] = du_[i + 1];
          du_[i + 1] = -fact * du_[i + 1];
        }
        swapped_[i] = true;
      }
    }
    if (d_[n - 1] == 0.0) d_[n - 1] = tiny;
  }

  void solve(std::vector<double>& b) const {
    const std::size_t n = d_.size();
    for (std::size_t i = 0; i + 1 < n; ++i) {
      if (!swapped_[i]) {
        b[i + 1] -= dl_[i] * b[i];
      } else {
        const double temp = b[i];
        b[i] = b[i + 1];
        b[i + 1] = temp - dl_[i] * b[i];
      }
    }
    b[n - 1] /= d_[n - 1];
    b[n - 2] = (b[n - 2] - du_[n - 2] * b[n - 1]) / d_[n - 2];
    for (std::size_t i = n - 2; i-- > 0;) {
      b[i] = (b[i] - du_[i] * b[i + 1] - du2_[i] * b[i + 2]) / d_[i];
    }
  }

 private:
  std::vector<double> d_, dl_, du_, du2_;
  std::vector<bool> swapped_;
};

double bisect(const TridiagonalHamiltonian& h, std::size_t index, double lo, double hi,
              double tolerance) {
  for (int step = 0; step < kMaxBisectionSteps; ++step) {
    const double width_floor =
        4.0 * std::numeric_limits<double>::epsilon() * std::max(std::abs(lo), std::abs(hi));
    if (hi - lo < std::max(tolerance, width_floor)) return 0.5 * (lo + hi);
    const double mid = 0.5 * (lo + hi);
    if (h.count_below(mid) > index) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  std::ostringstream msg;
  msg << "bisection for eigenvalue " << index << " did not shrink below " << tolerance << " in "
      << kMaxBisectionSteps << " steps";
  throw ConvergenceFailure(msg.str());
}

std::vector<double> inverse_iteration(const TridiagonalHamiltonian& h, double lambda,
                                      std::span<const std::vector<double>> previous) {
  const std::size_t n = h.diagonal.size();
  const TridiagonalLU lu(h.diagonal, h.off_diagonal, lambda);

  std::mt19937 gen(20240607u);
  std::vector<double> v(n);
  for (double& x : v) x = static_cast<double>(gen()) / 4294967296.0 - 0.5;

  auto orthonormalize = [&](std::vector<double>& x) {
    for (const auto& p : previous) {
      double dot = 0.0;
      for (std::size_t i = 0; i < n; ++i) dot += x[i] * p[i];
      for (std::size_t i = 0; i < n; ++i) x[i] -= dot * p[i];
    }
    double nrm = 0.0;
    for (double xi : x) nrm += xi * xi;
    nrm = std::sqrt(nrm);
    if (!(nrm > 0.0) || !std::isfinite(nrm)) {
      throw ConvergenceFailure("inverse iteration produced a degenerate vector");
    }
    for (double& xi : x) xi /= nrm;
  };

  orthonormalize(v);
  for (int it = 0; it < 8; ++it) {
    std::vector<double> next = v;
    lu.solve(next);
    orthonormalize(next);
    double dot = 0.0;
    for (std::size_t i = 0; i < n; ++i) dot += next[i] * v[i];
    v = std::move(next);
    if (it >= 2 && 1.0 - std::abs(dot) < 1e-15) break;
  }
  return v;
}

}  // namespace

std::size_t TridiagonalHamiltonian::count_below(double lambda) const {
  const double e2 = off_diagonal * off_diagonal;
  const double pivmin = std::numeric_limits<double>::min() * std::max(1.0, e2);
  std::size_t count = 0;
  double q = diagonal[0] - lambda;
  if (std::abs(q) < pivmin) q = -pivmin;
  if (q < 0.0) ++count;
  for (std::size_t i = 1; i < diagonal.size(); ++i) {
    q = diagonal[i] - lambda - e2 / q;
    if (std::abs(q) < pivmin) q = -pivmin;
    if (q < 0.0) ++count;
  }
  return count;
}

std::vector<double> TridiagonalHamiltonian::apply(std::span<const double> psi) const {
  const std::size_t n = diagonal.size();
  if (psi.size() != n) throw std::invalid_argument("apply: size mismatch");
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    double v = diagonal[i] * psi[i];
    if (i > 0) v += off_diagonal * psi[i - 1];
    if (i + 1 < n) v += off_diagonal * psi[i + 1];
    out[i] = v;
  }
  return out;
}

TridiagonalHamiltonian build_hamiltonian(const Grid& grid, std::span<const double> potential_values) {
  if (potential_values.size() != grid.size()) {
    throw std::invalid_argument("build_hamiltonian: potential size does not match grid");
  }
  const double h = grid.spacing();
  const double inv_h2 = 1.0 / (h * h);
  std::vector<double> diag(grid.size());
  for (std::size_t i = 0; i < diag.size(); ++i) diag[i] = 2.0 * inv_h2 + potential_values[i];
  return TridiagonalHamiltonian{grid, std::move(diag), -inv_h2};
}

TridiagonalHamiltonian build_hamiltonian(const PotentialCurve& pot) {
  return build_hamiltonian(pot.grid, pot.values);
}

std::vector<Eigenpair> lowest_eigenpairs(const TridiagonalHamiltonian& h, std::size_t k,
                                         double tolerance) {
  if (k == 0 || k > 6) throw std::invalid_argument("lowest_eigenpairs: k must be in [1, 6]");
  if (h.diagonal.size() < k) throw std::invalid_argument("lowest_eigenpairs: grid too small");
  for (double d : h.diagonal) {
    if (!std::isfinite(d)) throw ConvergenceFailure("non-finite Hamiltonian diagonal");
  }
  if (!std::isfinite(h.off_diagonal)) throw ConvergenceFailure("non-finite off-diagonal");

  // Gershgorin bounds
  const double radius = 2.0 * std::abs(h.off_diagonal);
  const auto [dmin, dmax] = std::minmax_element(h.diagonal.begin(), h.diagonal.end());
  const double lower = *dmin - radius;
  const double upper = *dmax + radius;

  std::vector<double> energies(k);
  double lo = lower;
  for (std::size_t j = 0; j < k; ++j) {
    energies[j] = bisect(h, j, lo, upper, tolerance);
    lo = std::max(lower, energies[j] - 2.0 * tolerance);
  }

  std::vector<Eigenpair> out;
  std::vector<std::vector<double>> vectors;
  const std::size_t n = h.diagonal.size();
  const std::size_t c = h.grid.center();
  for (std::size_t j = 0; j < k; ++j) {
    std::vector<double> v = inverse_iteration(h, energies[j], vectors);
    vectors.push_back(v);

    RealWave wave(h.grid, std::move(v));
    normalize(wave);
    std::size_t arg = c;
    for (std::size_t i = c; i < n; ++i) {
      if (std::abs(wave[i]) > std::abs(wave[arg])) arg = i;
    }
    if (wave[arg] < 0.0) {
      for (double& x : wave.samples) x = -x;
    }
    out.push_back(Eigenpair{energies[j], std::move(wave)});
  }
  return out;
}

double eigen_residual(const TridiagonalHamiltonian& h, const RealWave& wave, double energy) {
  std::vector<double> r = h.apply(wave.samples);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] -= energy * wave[i];
  const double denom = interior_norm(wave.samples);
  if (denom == 0.0) return 0.0;
  return interior_norm(r) / denom;
}

double check_intertwining(FactorizationEnergy eps, const RealWave& f) {
  const Grid& grid = f.grid;
  const double h = grid.spacing();

  // Xi (A f)
  const RealWave af = apply_A(eps, f);
  const std::vector<double> af2 = second_derivative(af.samples, h);
  std::vector<double> lhs(f.size());
  for (std::size_t i = 0; i < lhs.size(); ++i) {
    lhs[i] = -af2[i] + potential(eps, grid[i]) * af[i];
  }

  // A (eta f)
  const std::vector<double> f2 = second_derivative(f.samples, h);
  std::vector<double> eta_f(f.size());
  for (std::size_t i = 0; i < eta_f.size(); ++i) {
    eta_f[i] = -f2[i] + base_potential(grid[i]) * f[i];
  }
  const RealWave rhs = apply_A(eps, RealWave(grid, std::move(eta_f)));

  std::vector<double> diff(f.size());
  for (std::size_t i = 0; i < diff.size(); ++i) diff[i] = lhs[i] - rhs[i];
  const double num = interior_max_abs(diff);
  const double den = interior_max_abs(lhs);
  if (den == 0.0) return num;
  return num / den;
}

double bisection_tolerance_for(FactorizationEnergy eps) {
  return eps.value() >= -1.0001 ? 1e-13 : kBisectionTolerance;
}

SpectrumReport verify_spectrum(FactorizationEnergy eps, const Grid& grid) {
  const TridiagonalHamiltonian h = build_hamiltonian(sample_potential(eps, grid));
  const std::size_t bound = h.count_below(0.0);
  if (bound != 2) {
    std::ostringstream msg;
    msg << "expected 2 bound states below 0 for epsilon = " << eps.value() << ", found " << bound;
    throw BoundStateCountMismatch(msg.str());
  }
  const std::vector<Eigenpair> pairs = lowest_eigenpairs(h, 2, bisection_tolerance_for(eps));
  const RealWave psi0 = ground_state(eps, grid);
  const RealWave psi1 = excited_state(eps, grid);

  SpectrumReport r{};
  r.epsilon = eps.value();
  r.e0_analytic = eps.value();
  r.e1_analytic = -1.0;
  r.e0_numeric = pairs[0].energy;
  r.e1_numeric = pairs[1].energy;
  r.e0_error = std::abs(r.e0_numeric - r.e0_analytic);
  r.e1_error = std::abs(r.e1_numeric - r.e1_analytic);
  r.psi0_residual = eigen_residual(h, psi0, r.e0_analytic);
  r.psi1_residual = eigen_residual(h, psi1, r.e1_analytic);
  r.psi0_overlap = std::abs(inner_product(pairs[0].wave, psi0));
  r.psi1_overlap = std::abs(inner_product(pairs[1].wave, psi1));
  r.bound_state_count = bound;
  return r;
}

}  // namespace dbtwell
