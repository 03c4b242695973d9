#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "dbtwell/errors.hpp"
#include "dbtwell/oracle.hpp"

using namespace dbtwell;

namespace {

std::vector<double> sampled(const Grid& g, auto&& v) {
  std::vector<double> out(g.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = v(g[i]);
  return out;
}

// Exact eigenvalues of the free 3-point Laplacian with Dirichlet walls:
// (4/h^2) sin^2(k pi / (2(n+1))), k = 1..n.
double free_box_level(std::size_t k, std::size_t n, double h) {
  const double s = std::sin(static_cast<double>(k) * std::numbers::pi / (2.0 * (n + 1)));
  return 4.0 / (h * h) * s * s;
}

}  // namespace

TEST_CASE("build_hamiltonian stencil") {
  const Grid g(2.0, 5);  // h = 1
  const TridiagonalHamiltonian h = build_hamiltonian(g, std::vector<double>(5, 0.0));
  for (double d : h.diagonal) CHECK(d == 2.0);
  CHECK(h.off_diagonal == -1.0);

  const Grid std_grid = Grid::standard();
  const TridiagonalHamiltonian hw = build_hamiltonian(sample_potential(FactorizationEnergy(-1.5), std_grid));
  const double inv_h2 = 1.0 / (std_grid.spacing() * std_grid.spacing());
  CHECK(hw.diagonal[std_grid.center()] == doctest::Approx(2.0 * inv_h2 - 1.0).epsilon(1e-15));
}

TEST_CASE("Sturm count matches the free-box spectrum") {
  const Grid g(3.0, 31);
  const TridiagonalHamiltonian h = build_hamiltonian(g, std::vector<double>(g.size(), 0.0));
  for (double lambda = -1.0; lambda < 4.0 / (g.spacing() * g.spacing()) + 1.0; lambda += 3.7) {
    std::size_t expected = 0;
    for (std::size_t k = 1; k <= g.size(); ++k) expected += free_box_level(k, g.size(), g.spacing()) < lambda;
    REQUIRE(h.count_below(lambda) == expected);
  }
}

TEST_CASE("free particle box has no bound state") {
  const Grid g = Grid::standard();
  const TridiagonalHamiltonian h = build_hamiltonian(g, std::vector<double>(g.size(), 0.0));
  const auto pairs = lowest_eigenpairs(h, 3);
  CHECK(h.count_below(0.0) == 0);
  for (std::size_t k = 0; k < 3; ++k) {
    CHECK(pairs[k].energy >= 0.0);
    CHECK(pairs[k].energy == doctest::Approx(free_box_level(k + 1, g.size(), g.spacing())).epsilon(1e-9));
  }
  const double box = g.x_max() - g.x_min() + 2 * g.spacing();
  CHECK(pairs[0].energy == doctest::Approx(std::pow(std::numbers::pi / box, 2)).epsilon(1e-4));
}

TEST_CASE("harmonic oscillator self-test") {
  const Grid g(15.0, 4001);
  const TridiagonalHamiltonian h = build_hamiltonian(g, sampled(g, [](double x) { return x * x; }));
  const auto pairs = lowest_eigenpairs(h, 3);
  CHECK(std::abs(pairs[0].energy - 1.0) < 1e-4);
  CHECK(std::abs(pairs[1].energy - 3.0) < 1e-4);
  CHECK(std::abs(pairs[2].energy - 5.0) < 1e-4);
  // eigenvectors: Gaussian ground state
  const RealWave gauss = sample(g, [](double x) { return std::pow(std::numbers::pi, -0.25) * std::exp(-x * x / 2); });
  CHECK(std::abs(inner_product(pairs[0].wave, gauss)) > 1.0 - 1e-8);
}

TEST_CASE("base well self-test") {
  const Grid g = Grid::standard();
  const TridiagonalHamiltonian h = build_hamiltonian(g, sampled(g, base_potential));
  const auto pairs = lowest_eigenpairs(h, 1);
  CHECK(std::abs(pairs[0].energy + 1.0) < 1e-5);
  CHECK(h.count_below(0.0) == 1);
  CHECK(std::abs(inner_product(pairs[0].wave, base_ground_state(g))) > 1.0 - 1e-8);
}

TEST_CASE("transformed well has the two analytic levels") {
  const Grid g = Grid::standard();
  const TridiagonalHamiltonian h = build_hamiltonian(sample_potential(FactorizationEnergy(-1.5), g));
  const auto pairs = lowest_eigenpairs(h, 2);
  CHECK(std::abs(pairs[0].energy + 1.5) < 1e-4);
  CHECK(std::abs(pairs[1].energy + 1.0) < 1e-4);
  // deterministic sign convention: positive on the right
  CHECK(pairs[0].wave[g.center()] > 0.0);
  CHECK(pairs[1].wave[g.center() + 100] > 0.0);
}

TEST_CASE("lowest_eigenpairs errors") {
  const Grid g(5.0, 101);
  const TridiagonalHamiltonian h = build_hamiltonian(g, std::vector<double>(g.size(), 0.0));
  CHECK_THROWS_AS(lowest_eigenpairs(h, 7), std::invalid_argument);
  CHECK_THROWS_AS(lowest_eigenpairs(h, 0), std::invalid_argument);
  std::vector<double> bad(g.size(), 0.0);
  bad[17] = NAN;
  CHECK_THROWS_AS(lowest_eigenpairs(build_hamiltonian(g, bad), 2), ConvergenceFailure);
}

TEST_CASE("eigen_residual of the analytic states") {
  // The 3-point stencil leaves an O(h^2) residual of about (h^2/12)||psi''''||.
  auto residuals = [](std::size_t n, double e) {
    const Grid g(20.0, n);
    const FactorizationEnergy eps(e);
    const TridiagonalHamiltonian h = build_hamiltonian(sample_potential(eps, g));
    return std::pair{eigen_residual(h, ground_state(eps, g), e),
                     eigen_residual(h, excited_state(eps, g), -1.0)};
  };
  for (double e : {-1.10, -1.5, -2.25}) {
    const auto [r0, r1] = residuals(4001, e);
    CHECK(r0 < 1e-4);
    CHECK(r1 < 1e-4);
    const auto [s0, s1] = residuals(8001, e);
    CHECK(r0 / s0 == doctest::Approx(4.0).epsilon(0.05));
    CHECK(r1 / s1 == doctest::Approx(4.0).epsilon(0.05));
  }

  const Grid g = Grid::standard();
  const FactorizationEnergy eps(-1.5);
  const TridiagonalHamiltonian h = build_hamiltonian(sample_potential(eps, g));
  CHECK(eigen_residual(h, ground_state(eps, g), -1.5 + 0.1) == doctest::Approx(0.1).epsilon(1e-3));
}

TEST_CASE("intertwining relation") {
  const Grid g = Grid::standard();
  const FactorizationEnergy eps(-1.5);
  CHECK(check_intertwining(eps, sample(g, [](double x) { return std::exp(-x * x); })) < 1e-4);
  CHECK(check_intertwining(eps, base_ground_state(g)) < 1e-4);
  CHECK(check_intertwining(eps, RealWave(g)) == 0.0);

  std::mt19937 gen(11);
  std::uniform_real_distribution<double> pos(-3.0, 3.0), width(0.5, 2.0), ep(-2.95, -1.05);
  for (int k = 0; k < 10; ++k) {
    const double c = pos(gen), w = width(gen);
    const FactorizationEnergy e(ep(gen));
    const RealWave bump = sample(g, [&](double x) { return std::exp(-std::pow((x - c) / w, 2)); });
    CHECK(check_intertwining(e, bump) < 1e-4);
  }
}

TEST_CASE("intertwining check detects a wrong potential") {
  // Xi built from eps = -2 against A built from eps = -1.5 must not intertwine
  const Grid g = Grid::standard();
  const RealWave bump = sample(g, [](double x) { return std::exp(-x * x); });
  const FactorizationEnergy eps(-1.5);
  const RealWave af = apply_A(eps, bump);
  const std::vector<double> d2 = second_derivative(af.samples, g.spacing());
  double worst = 0.0, scale = 0.0;
  const FactorizationEnergy other(-2.0);
  const std::vector<double> f2 = second_derivative(bump.samples, g.spacing());
  std::vector<double> eta_f(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) eta_f[i] = -f2[i] + base_potential(g[i]) * bump[i];
  const RealWave rhs = apply_A(eps, RealWave(g, eta_f));
  for (std::size_t i = 3; i + 3 < g.size(); ++i) {
    const double lhs = -d2[i] + potential(other, g[i]) * af[i];
    worst = std::max(worst, std::abs(lhs - rhs[i]));
    scale = std::max(scale, std::abs(lhs));
  }
  CHECK(worst / scale > 1e-2);
}

TEST_CASE("verify_spectrum for the figure configurations") {
  const Grid g = Grid::standard();
  for (double e : {-1.10, -2.25}) {
    const SpectrumReport r = verify_spectrum(FactorizationEnergy(e), g);
    CHECK(r.bound_state_count == 2);
    CHECK(r.e0_error < 1e-4);
    CHECK(r.e1_error < 1e-4);
    CHECK(r.psi0_overlap > 0.99999);
    CHECK(r.psi1_overlap > 0.99999);
    CHECK(r.psi0_overlap <= 1.0 + 1e-12);
    CHECK(r.e0_analytic == e);
    CHECK(r.e1_analytic == -1.0);
  }
}

TEST_CASE("near-degenerate pair is resolved") {
  const Grid g(30.0, 6001);
  const FactorizationEnergy eps(-1.0001);
  CHECK(bisection_tolerance_for(eps) == 1e-13);
  const SpectrumReport r = verify_spectrum(eps, g);
  const double gap = r.e1_numeric - r.e0_numeric;
  CHECK(std::abs(gap - 1e-4) < 1e-5);
  CHECK(r.e0_error < 1e-4);
  CHECK(r.e1_error < 1e-4);
}

TEST_CASE("oracle agreement, eigenvector match and convergence order") {
  for (double e : {-1.05, -1.25, -1.5, -1.75, -2.0, -2.25, -2.5, -2.75, -2.95}) {
    CAPTURE(e);
    const FactorizationEnergy eps(e);
    const SpectrumReport coarse = verify_spectrum(eps, Grid(20.0, 4001));
    const SpectrumReport fine = verify_spectrum(eps, Grid(20.0, 8001));
    CHECK(coarse.bound_state_count == 2);
    CHECK(coarse.e0_error < 1e-4);
    CHECK(coarse.e1_error < 1e-4);
    CHECK(1.0 - coarse.psi0_overlap < 1e-8);
    CHECK(1.0 - coarse.psi1_overlap < 1e-8);
    const double order0 = std::log2(coarse.e0_error / fine.e0_error);
    const double order1 = std::log2(coarse.e1_error / fine.e1_error);
    CHECK(order0 >= 1.8);
    CHECK(order0 <= 2.2);
    CHECK(order1 >= 1.8);
    CHECK(order1 <= 2.2);
  }
}
