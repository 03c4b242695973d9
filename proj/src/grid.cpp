#include "dbtwell/grid.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "dbtwell/errors.hpp"

namespace dbtwell {

Grid::Grid(double x_max, std::size_t n_points) : x_max_(x_max), n_(n_points) {
  if (!(std::isfinite(x_max) && x_max > 0.0)) {
    throw InvalidGrid("grid half-width must be positive and finite");
  }
  if (n_points < 5 || n_points % 2 == 0) {
    throw InvalidGrid("grid needs an odd number of points >= 5, got " +
                      std::to_string(n_points));
  }
  center_ = (n_ - 1) / 2;
  h_ = x_max_ / static_cast<double>(center_);
}

std::vector<double> Grid::nodes() const {
  std::vector<double> xs(n_);
  for (std::size_t i = 0; i < n_; ++i) xs[i] = (*this)[i];
  return xs;
}

RealWave::RealWave(Grid g, std::vector<double> s) : grid(g), samples(std::move(s)) {
  if (samples.size() != grid.size()) {
    throw std::invalid_argument("sample count does not match grid size");
  }
}

double trapezoid(const Grid& grid, std::span<const double> f) {
  if (f.size() != grid.size()) {
    throw std::invalid_argument("trapezoid: sample count does not match grid size");
  }
  double sum = 0.5 * (f.front() + f.back());
  for (std::size_t i = 1; i + 1 < f.size(); ++i) sum += f[i];
  return sum * grid.spacing();
}

double inner_product(const RealWave& a, const RealWave& b) {
  if (!(a.grid == b.grid)) throw std::invalid_argument("inner_product: grids differ");
  std::vector<double> prod(a.size());
  for (std::size_t i = 0; i < prod.size(); ++i) prod[i] = a[i] * b[i];
  return trapezoid(a.grid, prod);
}

double norm_squared(const RealWave& f) { return inner_product(f, f); }

void normalize(RealWave& f) {
  const double n2 = norm_squared(f);
  if (!(n2 > 0.0) || !std::isfinite(n2)) {
    throw std::domain_error("cannot normalize a zero or non-finite field");
  }
  const double scale = 1.0 / std::sqrt(n2);
  for (double& v : f.samples) v *= scale;
}

std::vector<double> first_derivative(std::span<const double> f, double h) {
  const std::size_t n = f.size();
  if (n < 5) throw std::invalid_argument("first_derivative needs at least 5 samples");
  std::vector<double> d(n);
  const double c4 = 1.0 / (12.0 * h);
  for (std::size_t i = 2; i + 2 < n; ++i) {
    d[i] = (f[i - 2] - 8.0 * f[i - 1] + 8.0 * f[i + 1] - f[i + 2]) * c4;
  }
  d[1] = (f[2] - f[0]) / (2.0 * h);
  d[n - 2] = (f[n - 1] - f[n - 3]) / (2.0 * h);
  d[0] = (-3.0 * f[0] + 4.0 * f[1] - f[2]) / (2.0 * h);
  d[n - 1] = (3.0 * f[n - 1] - 4.0 * f[n - 2] + f[n - 3]) / (2.0 * h);
  return d;
}

std::vector<double> second_derivative(std::span<const double> f, double h) {
  const std::size_t n = f.size();
  if (n < 5) throw std::invalid_argument("second_derivative needs at least 5 samples");
  std::vector<double> d(n);
  const double h2 = h * h;
  const double c4 = 1.0 / (12.0 * h2);
  for (std::size_t i = 2; i + 2 < n; ++i) {
    d[i] = (-f[i - 2] + 16.0 * f[i - 1] - 30.0 * f[i] + 16.0 * f[i + 1] - f[i + 2]) * c4;
  }
  d[1] = (f[0] - 2.0 * f[1] + f[2]) / h2;
  d[n - 2] = (f[n - 3] - 2.0 * f[n - 2] + f[n - 1]) / h2;
  // one-sided, second order
  d[0] = (2.0 * f[0] - 5.0 * f[1] + 4.0 * f[2] - f[3]) / h2;
  d[n - 1] = (2.0 * f[n - 1] - 5.0 * f[n - 2] + 4.0 * f[n - 3] - f[n - 4]) / h2;
  return d;
}

}  // namespace dbtwell
