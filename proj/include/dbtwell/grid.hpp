#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace dbtwell {

/// Uniform mesh on [-x_max, x_max] with an odd node count, so x = 0 is a node.
///
/// Node coordinates are computed as (i - center) * h, which makes the mesh
/// exactly antisymmetric: x[i] == -x[n-1-i] bit for bit.
class Grid {
 public:
  static constexpr double kDefaultHalfWidth = 20.0;
  static constexpr std::size_t kDefaultPoints = 4001;

  Grid(double x_max, std::size_t n_points);

  static Grid standard() { return Grid(kDefaultHalfWidth, kDefaultPoints); }

  double x_max() const { return x_max_; }
  double x_min() const { return -x_max_; }
  double spacing() const { return h_; }
  std::size_t size() const { return n_; }
  std::size_t center() const { return center_; }

  double operator[](std::size_t i) const {
    return (static_cast<double>(i) - static_cast<double>(center_)) * h_;
  }

  std::vector<double> nodes() const;

  bool operator==(const Grid&) const = default;

 private:
  double x_max_;
  std::size_t n_;
  std::size_t center_;
  double h_;
};

/// Sampled real wavefunction (or any real field) on a grid.
struct RealWave {
  Grid grid;
  std::vector<double> samples;

  RealWave(Grid g, std::vector<double> s);
  explicit RealWave(Grid g) : RealWave(g, std::vector<double>(g.size(), 0.0)) {}

  std::size_t size() const { return samples.size(); }
  double operator[](std::size_t i) const { return samples[i]; }
};

// Composite trapezoid rule on the uniform grid.
double trapezoid(const Grid& grid, std::span<const double> f);

double inner_product(const RealWave& a, const RealWave& b);
double norm_squared(const RealWave& f);

/// Rescales f so that the trapezoid norm is one. Throws std::domain_error on a zero field.
void normalize(RealWave& f);

/// First derivative: 4th-order central differences in the interior, 2nd-order
/// central at the nodes next to the edge, 2nd-order one-sided at the edges.
std::vector<double> first_derivative(std::span<const double> f, double h);

/// Second derivative with the same stencil layout as first_derivative.
std::vector<double> second_derivative(std::span<const double> f, double h);

}  // namespace dbtwell
