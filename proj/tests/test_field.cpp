#include <cmath>
#include <random>

#include "doctest.h"
#include "helpers.hpp"
#include "orthoplate/errors.hpp"
#include "orthoplate/field.hpp"

using namespace orthoplate;
using orthoplate::testing::analytic_field;

TEST_CASE("grid constraints") {
  CHECK_THROWS_AS(Grid::make(1.0, 1.0, 10, 11), ValidationError);  // even nx
  CHECK_THROWS_AS(Grid::make(1.0, 1.0, 11, 3), ValidationError);   // too few ny
  CHECK_THROWS_AS(Grid::make(-1.0, 1.0, 11, 11), ValidationError);
  const Grid g = Grid::make(2.0, 0.5, 11, 21);
  CHECK(g.x(0) == 0.0);
  CHECK(g.x(10) == 2.0);
  CHECK(g.y(0) == -0.5);
  CHECK(g.y(20) == 0.5);
  CHECK(g.dx() == doctest::Approx(0.2));
  CHECK(g.dy() == doctest::Approx(0.05));
}

TEST_CASE("Simpson weights integrate cubics exactly") {
  const int n = 11;
  const double h = 0.3;
  const std::vector<double> w = simpson_weights(n, h);
  double acc = 0, linear = 0, cubic = 0;
  for (int i = 0; i < n; ++i) {
    const double x = h * i;
    acc += w[i];
    linear += w[i] * x;
    cubic += w[i] * x * x * x;
  }
  const double len = h * (n - 1);
  CHECK(acc == doctest::Approx(len).epsilon(1e-14));
  CHECK(linear == doctest::Approx(len * len / 2.0).epsilon(1e-14));
  CHECK(cubic == doctest::Approx(std::pow(len, 4) / 4.0).epsilon(1e-13));
  CHECK_THROWS_AS(simpson_weights(10, h), ValidationError);
}

TEST_CASE("grid integration converges at fourth order") {
  // Integrand sin(pi x / L) cos(y) with closed-form integral.
  const double L = 2.0, ell = 1.0;
  const double exact = (2.0 * L / M_PI) * 2.0 * std::sin(ell);
  auto error_at = [&](int n) {
    const Grid g = Grid::make(L, ell, n, n);
    Eigen::MatrixXd plane(g.nx, g.ny);
    for (int i = 0; i < g.nx; ++i) {
      for (int j = 0; j < g.ny; ++j) {
        plane(i, j) = std::sin(M_PI * g.x(i) / L) * std::cos(g.y(j));
      }
    }
    return std::abs(integrate(plane, g) - exact);
  };
  const double e1 = error_at(21);
  const double e2 = error_at(41);
  CHECK(e1 / e2 > 12.0);  // ~16 for a fourth-order rule
  // (2L/180) h^4 max|d4 sin(pi x / L)| ~ 4e-7 at 40 intervals.
  CHECK(e2 < 1e-6);
}

TEST_CASE("finite difference weights are exact on polynomials") {
  const std::vector<double> nodes = {-1.0, -0.3, 0.2, 0.9, 1.7};
  const double z = 0.4;
  // p(x) = 3 x^4 - 2 x^2 + x: p''(z) = 36 z^2 - 4.
  const std::vector<double> w = fd_weights(z, nodes, 2);
  double acc = 0;
  for (size_t i = 0; i < nodes.size(); ++i) {
    const double x = nodes[i];
    acc += w[i] * (3.0 * x * x * x * x - 2.0 * x * x + x);
  }
  CHECK(acc == doctest::Approx(36.0 * z * z - 4.0).epsilon(1e-12));
}

TEST_CASE("directional derivatives of an analytic plane") {
  const Grid g = Grid::make(2.0, 1.0, 81, 81);
  Eigen::MatrixXd plane(g.nx, g.ny), dxx(g.nx, g.ny), dy3(g.nx, g.ny);
  for (int i = 0; i < g.nx; ++i) {
    for (int j = 0; j < g.ny; ++j) {
      plane(i, j) = std::sin(1.3 * g.x(i)) * std::cos(0.7 * g.y(j));
      dxx(i, j) = -1.69 * plane(i, j);
      dy3(i, j) = std::sin(1.3 * g.x(i)) * 0.343 * std::sin(0.7 * g.y(j));
    }
  }
  CHECK((diff_x(plane, g, 2) - dxx).cwiseAbs().maxCoeff() < 2e-4);
  CHECK((diff_y(plane, g, 3) - dy3).cwiseAbs().maxCoeff() < 2e-3);
}

TEST_CASE("derivative planes: bookkeeping and finite-difference fill") {
  const Grid g = Grid::make(3.0, 1.0, 121, 81);
  DisplacementField f = analytic_field(g, {{0.8, 2, 1.1, 0.4}});
  CHECK(f.has(Deriv::XXYY));

  DisplacementField bare = DisplacementField::zero(g);
  bare.u = f.u;
  CHECK_FALSE(bare.has(Deriv::XX));
  CHECK_THROWS_AS(bare.plane(Deriv::XX), ValidationError);
  bare.ensure_derivatives();
  for (Deriv d : {Deriv::XX, Deriv::XY, Deriv::YY, Deriv::XXY, Deriv::YYY}) {
    const double scale = f.plane(d).cwiseAbs().maxCoeff();
    CHECK((bare.plane(d) - f.plane(d)).cwiseAbs().maxCoeff() < 1e-3 * scale);
  }

  CHECK(deriv_orders(Deriv::XXY) == std::pair<int, int>{2, 1});
  CHECK(deriv_orders(Deriv::YYYY) == std::pair<int, int>{0, 4});
}

TEST_CASE("inner product symmetry and scaling") {
  const Grid g = Grid::make(1.0, 1.0, 21, 21);
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> amp(-1.0, 1.0);
  Eigen::MatrixXd a(g.nx, g.ny), b(g.nx, g.ny);
  for (int i = 0; i < g.nx; ++i) {
    for (int j = 0; j < g.ny; ++j) {
      a(i, j) = amp(rng);
      b(i, j) = amp(rng);
    }
  }
  CHECK(inner_product(a, b, g) == doctest::Approx(inner_product(b, a, g)).epsilon(1e-14));
  CHECK(inner_product(2.0 * a, b, g) ==
        doctest::Approx(2.0 * inner_product(a, b, g)).epsilon(1e-14));
  CHECK(inner_product(a, a, g) > 0.0);
}
