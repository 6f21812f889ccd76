#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "bnls/grid.hpp"

using namespace bnls;
namespace {
constexpr double kPi = std::numbers::pi;

// int_0^inf r^k exp(-a r^2) dr
double gaussian_moment(int k, double a) {
  return 0.5 * std::tgamma(0.5 * (k + 1)) / std::pow(a, 0.5 * (k + 1));
}
}  // namespace

TEST_CASE("unit-ball volumes") {
  auto g5 = build_grid(5, 512, 1.0);
  CHECK(integrate(g5, RVec::Ones(g5.n)) ==
        Catch::Approx(8.0 * kPi * kPi / 15.0).epsilon(1e-12));

  auto g8 = build_grid(8, 512, 1.0);
  CHECK(integrate(g8, RVec::Ones(g8.n)) ==
        Catch::Approx(std::pow(kPi, 4) / 24.0).epsilon(1e-12));
}

TEST_CASE("quadrature is exact on monomials up to the declared order") {
  for (int d : {5, 8, 16}) {
    auto g = build_grid(d, 512, 3.0);
    REQUIRE(g.quad_order >= 1);
    for (int m = 0; m <= g.quad_order; ++m) {
      RVec rm = g.nodes.array().pow(m);
      const double exact = g.sphere_area * std::pow(g.r_max, d + m) / (d + m);
      CHECK(integrate(g, rm) == Catch::Approx(exact).epsilon(1e-10));
    }
  }
}

TEST_CASE("r^2 moment on the unit ball, d = 5") {
  // beyond the declared exactness order, so only O(h^2) accurate
  auto g = build_grid(5, 512, 1.0);
  RVec r2 = g.nodes.array().square();
  CHECK(integrate(g, r2) == Catch::Approx(8.0 * kPi * kPi / 21.0).epsilon(1e-4));
}

TEST_CASE("gaussian integral over R^5") {
  auto g = build_grid(5, 512, 10.0);
  RVec f = (-g.nodes.array().square()).exp();
  CHECK(integrate(g, f) == Catch::Approx(std::pow(kPi, 2.5)).epsilon(1e-3));
}

TEST_CASE("linearity of integrate") {
  auto g = build_grid(8, 64, 2.0);
  RVec f = g.nodes.array().sin();
  RVec h = g.nodes.array().cos();
  const double a = 3.25;
  CHECK(integrate(g, RVec(a * f + h)) ==
        Catch::Approx(a * integrate(g, f) + integrate(g, h)).epsilon(1e-14));
}

TEST_CASE("grid invariants") {
  auto g = build_grid(7, 128, 4.0);
  CHECK((g.weights.array() > 0.0).all());
  for (int i = 0; i + 1 < g.n; ++i) CHECK(g.nodes[i] < g.nodes[i + 1]);
  CHECK(g.nodes[0] > 0.0);
  CHECK(g.nodes[g.n - 1] < g.r_max);
}

TEST_CASE("argument validation") {
  CHECK_THROWS_AS(build_grid(4, 128, 1.0), std::domain_error);
  CHECK_THROWS_AS(build_grid(17, 128, 1.0), std::domain_error);
  CHECK_THROWS_AS(build_grid(8, 8, 1.0), std::domain_error);
  CHECK_THROWS_AS(build_grid(8, 128, -1.0), std::domain_error);
  auto g = build_grid(8, 64, 1.0);
  CHECK_THROWS_AS(integrate(g, RVec::Ones(63)), std::domain_error);
}

TEST_CASE("weighted mass of a gaussian matches the closed form") {
  // ||e^{-r^2}||_{L^2}^2 over R^5 = omega_4 int r^4 e^{-2r^2} dr
  auto g = build_grid(5, 512, 10.0);
  CVec u = (-g.nodes.array().square()).exp().cast<Cplx>();
  const double exact = sphere_surface(5) * gaussian_moment(4, 2.0);
  CHECK(weighted_norm2(g, u) == Catch::Approx(exact).epsilon(1e-4));
  CHECK(exact == Catch::Approx(std::pow(0.5 * kPi, 2.5)).epsilon(1e-12));
}
