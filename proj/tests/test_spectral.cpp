#include <algorithm>
#include <cmath>
#include <complex>
#include <set>

#include "doctest.h"
#include "helpers.hpp"
#include "orthoplate/errors.hpp"
#include "orthoplate/plate.hpp"
#include "orthoplate/spectral.hpp"

using namespace orthoplate;
using orthoplate::testing::tacoma_model;

namespace {

const PlateModel& model() {
  static const PlateModel m = tacoma_model();
  return m;
}

}  // namespace

TEST_CASE("mode reduction extracts the expected parameters") {
  const ModeProblem mode = ModeProblem::reduce(model(), 3);
  CHECK(mode.m == 3);
  CHECK(mode.mu == doctest::Approx(3.0 * M_PI / 853.44).epsilon(1e-15));
  CHECK(mode.R == model().R);
  CHECK(mode.kappa == model().material.kappa);
  CHECK(mode.nu == model().material.nu);
  CHECK(mode.ell == 6.0);
  CHECK_THROWS_AS(ModeProblem::reduce(model(), 0), ValidationError);
}

TEST_CASE("characteristic roots solve the quartic and classify regimes") {
  const ModeProblem mode = ModeProblem::reduce(model(), 1);
  const double mu4 = std::pow(mode.mu, 4);
  const double lower = mode.R * mode.kappa * mu4;
  const double upper = mode.R * (1.0 + mode.kappa) * mu4;

  auto check_quartic = [&](double lam) {
    const CharacteristicRoots roots = characteristic_structure(mode, lam);
    for (const std::complex<double> s : {roots.s1, roots.s2}) {
      // s = t^2 must satisfy s^2 - 2 mu^2 s + (1 + kappa) mu^4 - lam / R = 0.
      const std::complex<double> res =
          s * s - 2.0 * mode.mu * mode.mu * s + (1.0 + mode.kappa) * mu4 - lam / mode.R;
      const double scale = std::max(std::abs(s * s), (1.0 + mode.kappa) * mu4);
      CHECK(std::abs(res) < 1e-12 * scale);
    }
    return roots;
  };

  CHECK(check_quartic(0.5 * lower).regime == RootRegime::ComplexPair);
  CHECK(check_quartic(0.5 * (lower + upper)).regime == RootRegime::TwoPositive);
  CHECK(check_quartic(2.0 * upper).regime == RootRegime::MixedSign);
  CHECK(characteristic_structure(mode, lower).degenerate);
  CHECK(characteristic_structure(mode, lower).regime == RootRegime::DegenerateLower);
  CHECK(characteristic_structure(mode, upper).regime == RootRegime::DegenerateUpper);

  const CharacteristicRoots complex_pair = characteristic_structure(mode, 0.5 * lower);
  CHECK(complex_pair.s1.imag() != 0.0);
  CHECK(std::abs(complex_pair.s1 - std::conj(complex_pair.s2)) <
        1e-12 * std::abs(complex_pair.s1));
}

TEST_CASE("boundary determinant: behavior along the spectral axis") {
  const ModeProblem mode = ModeProblem::reduce(model(), 1);

  SUBCASE("no spurious zero at the bottom of the axis") {
    CHECK(std::abs(mode_determinant(mode, Parity::Even, 1e-6)) > 0.0);
    CHECK(std::abs(mode_determinant(mode, Parity::Odd, 1e-6)) > 0.0);
  }

  SUBCASE("parities give distinct determinants") {
    const double lam = 10.0;
    CHECK(mode_determinant(mode, Parity::Even, lam) !=
          mode_determinant(mode, Parity::Odd, lam));
  }

  SUBCASE("sign change brackets the first vertical eigenvalue") {
    const double lo = mode_determinant(mode, Parity::Even, 0.47);
    const double hi = mode_determinant(mode, Parity::Even, 0.49);
    CHECK(lo * hi < 0.0);
  }

  SUBCASE("continuity across the regime boundaries") {
    // At the band edges the analytic-limit branch must agree with the generic
    // two-root branch evaluated just off the edge.
    const double mu4 = std::pow(mode.mu, 4);
    for (const double edge :
         {mode.R * mode.kappa * mu4, mode.R * (1.0 + mode.kappa) * mu4}) {
      const double at = mode_determinant(mode, Parity::Even, edge);
      const double below = mode_determinant(mode, Parity::Even, edge * (1.0 - 1e-9));
      const double above = mode_determinant(mode, Parity::Even, edge * (1.0 + 1e-9));
      const double scale =
          std::max({std::abs(at), std::abs(below), std::abs(above), 1e-30});
      CHECK(std::abs(at - below) < 1e-4 * scale);
      CHECK(std::abs(at - above) < 1e-4 * scale);
    }
  }
}

TEST_CASE("reference eigenvalues of the deck model") {
  const ModeProblem mode = ModeProblem::reduce(model(), 1);
  const std::vector<EigenPair> even = solve_mode_eigs(mode, Parity::Even, 1);
  const std::vector<EigenPair> odd = solve_mode_eigs(mode, Parity::Odd, 1);
  CHECK(even[0].lambda == doctest::Approx(0.481890947).epsilon(1e-6));
  CHECK(odd[0].lambda == doctest::Approx(38.585688966).epsilon(1e-6));
}

TEST_CASE("determinant eigenvalues meet the independent discretization") {
  // Oracle: Hermite-element Rayleigh quotients, a different formulation of the
  // same reduced problem.
  for (int m : {1, 2}) {
    const ModeProblem mode = ModeProblem::reduce(model(), m);
    for (Parity parity : {Parity::Even, Parity::Odd}) {
      const std::vector<EigenPair> det = solve_mode_eigs(mode, parity, 5);
      const std::vector<double> fe = discretization_oracle(mode, parity, 160);
      REQUIRE(fe.size() >= 5);
      for (int k = 0; k < 5; ++k) {
        CHECK(std::abs(det[static_cast<size_t>(k)].lambda - fe[static_cast<size_t>(k)]) <
              1e-3 * fe[static_cast<size_t>(k)]);
      }
    }
  }
}

TEST_CASE("discretization oracle converges at fourth order") {
  const ModeProblem mode = ModeProblem::reduce(model(), 1);
  for (Parity parity : {Parity::Even, Parity::Odd}) {
    const std::vector<EigenPair> det = solve_mode_eigs(mode, parity, 5);
    const double exact = det[4].lambda;  // high index: discretization error above noise
    const double e100 = std::abs(discretization_oracle(mode, parity, 100)[4] - exact);
    const double e200 = std::abs(discretization_oracle(mode, parity, 200)[4] - exact);
    if (e200 < 1e-12 * exact) continue;  // converged beyond measurable order
    const double order = std::log2(e100 / e200);
    CHECK(order > 3.5);
  }
  CHECK_THROWS_AS(discretization_oracle(mode, Parity::Even, 40), ValidationError);
}

TEST_CASE("eigenpairs satisfy the two-dimensional Rayleigh identity") {
  // lambda ||U||^2 = R * a(U, U) with the energy product evaluated on the grid;
  // the 1e-7 tolerance is the Simpson quadrature error of the two integrals.
  const Grid grid = model().default_grid(161, 121);
  for (int m : {1, 2}) {
    const ModeProblem mode = ModeProblem::reduce(model(), m);
    for (Parity parity : {Parity::Even, Parity::Odd}) {
      for (const EigenPair& p : solve_mode_eigs(mode, parity, 2)) {
        CHECK(p.rayleigh_residual < 1e-8);
        const DisplacementField U = p.field(grid);
        const double norm2 = inner_product(U.u, U.u, grid);
        const double quotient = model().R * h2star_inner(model(), U, U) / norm2;
        CHECK(quotient == doctest::Approx(p.lambda).epsilon(1e-7));
      }
    }
  }
}

TEST_CASE("normalization, sign, and parity conventions") {
  // The normalization is analytic; the sampled Simpson inner product carries
  // its own O(h^4) quadrature error, which sets the 1e-6 tolerances here.
  const Grid grid = model().default_grid(201, 161);
  const ModeProblem mode = ModeProblem::reduce(model(), 2);
  for (Parity parity : {Parity::Even, Parity::Odd}) {
    const std::vector<EigenPair> pairs = solve_mode_eigs(mode, parity, 3);
    for (const EigenPair& p : pairs) {
      const DisplacementField U = p.field(grid);
      CHECK(inner_product(U.u, U.u, grid) == doctest::Approx(1.0).epsilon(1e-6));
      CHECK(p.sample_y({mode.ell})[0] >= 0.0);
      // Parity of the y-profile, sampled off the nodes.
      const Eigen::VectorXd plus = p.sample_y({0.3 * mode.ell, 0.7 * mode.ell});
      const Eigen::VectorXd minus = p.sample_y({-0.3 * mode.ell, -0.7 * mode.ell});
      const double sgn = parity == Parity::Even ? 1.0 : -1.0;
      CHECK((plus - sgn * minus).cwiseAbs().maxCoeff() <
            1e-10 * plus.cwiseAbs().maxCoeff());
      CHECK(p.omega == doctest::Approx(2.0 * M_PI * p.nu_hz).epsilon(1e-15));
      CHECK(p.nu_hz ==
            doctest::Approx(frequency_hz(p.lambda, model().M, model().geometry.ell))
                .epsilon(1e-15));
    }
    // Ascending order and mutual orthogonality on the grid.
    for (size_t a = 0; a < pairs.size(); ++a) {
      for (size_t b = a + 1; b < pairs.size(); ++b) {
        CHECK(pairs[a].lambda < pairs[b].lambda);
        const double ip = inner_product(pairs[a].field(grid).u, pairs[b].field(grid).u, grid);
        CHECK(std::abs(ip) < 1e-6);
      }
    }
  }
}

TEST_CASE("free-edge eigenfunctions satisfy the plate equation and its boundary set") {
  const Grid grid = model().default_grid(121, 61);
  const ModeProblem mode = ModeProblem::reduce(model(), 1);
  for (Parity parity : {Parity::Even, Parity::Odd}) {
    const EigenPair p = solve_mode_eigs(mode, parity, 1)[0];
    const DisplacementField U = p.field(grid);
    const Eigen::MatrixXd f = p.lambda * U.u;
    CHECK(relative_interior_residual(model(), U, f) < 1e-6);
    CHECK(relative_boundary_residual(model(), U) < 1e-6);
  }
}

TEST_CASE("eigenvalues grow with the reinforcement ratio") {
  ModeProblem mode = ModeProblem::reduce(model(), 1);
  const double base = solve_mode_eigs(mode, Parity::Even, 1)[0].lambda;
  mode.kappa *= 2.0;
  CHECK(solve_mode_eigs(mode, Parity::Even, 1)[0].lambda > base);
}

TEST_CASE("per-family eigenvalue count limits") {
  const ModeProblem mode = ModeProblem::reduce(model(), 1);
  CHECK_THROWS_AS(solve_mode_eigs(mode, Parity::Even, 0), ValidationError);
  CHECK_THROWS_AS(solve_mode_eigs(mode, Parity::Even, 13), ValidationError);
}

TEST_CASE("assembled spectrum: ordering, families, tables, certification") {
  const Spectrum spec = assemble_spectrum(model(), 6, 3);
  CHECK(spec.pairs.size() == 6u * 2u * 3u);
  CHECK(std::is_sorted(spec.pairs.begin(), spec.pairs.end(),
                       [](const EigenPair& a, const EigenPair& b) {
                         return a.lambda < b.lambda;
                       }));
  REQUIRE(spec.lambda_vert.size() == 6u);
  REQUIRE(spec.lambda_tors.size() == 6u);
  for (int m = 1; m <= 6; ++m) {
    double lowest_even = 0, lowest_odd = 0;
    bool seen_even = false, seen_odd = false;
    for (const EigenPair& p : spec.pairs) {
      if (p.m != m) continue;
      if (p.parity == Parity::Even && (!seen_even || p.lambda < lowest_even)) {
        lowest_even = p.lambda;
        seen_even = true;
      }
      if (p.parity == Parity::Odd && (!seen_odd || p.lambda < lowest_odd)) {
        lowest_odd = p.lambda;
        seen_odd = true;
      }
    }
    CHECK(spec.lambda_vert[static_cast<size_t>(m - 1)] == lowest_even);
    CHECK(spec.lambda_tors[static_cast<size_t>(m - 1)] == lowest_odd);
    CHECK(spec.vert_hz[static_cast<size_t>(m - 1)] ==
          doctest::Approx(frequency_hz(lowest_even, model().M, model().geometry.ell))
              .epsilon(1e-15));
  }
  CHECK(spec.certified_below > 0.0);

  const FrequencyTables tables = frequencies(spec, model().M, model().geometry.ell);
  CHECK(tables.vertical_hz == spec.vert_hz);
  CHECK(tables.torsional_hz == spec.tors_hz);
}

TEST_CASE("modal synthesis scales linearly and validates sizes") {
  const Grid grid = model().default_grid(61, 31);
  const ModeProblem mode = ModeProblem::reduce(model(), 1);
  const EigenPair p = solve_mode_eigs(mode, Parity::Even, 1)[0];
  const DisplacementField one = synthesize_modal({&p}, {1.0}, grid);
  const DisplacementField three = synthesize_modal({&p}, {3.0}, grid);
  CHECK((three.u - 3.0 * one.u).cwiseAbs().maxCoeff() < 1e-14 * one.u.cwiseAbs().maxCoeff());
  CHECK((three.plane(Deriv::YYYY) - 3.0 * one.plane(Deriv::YYYY)).cwiseAbs().maxCoeff() <
        1e-14 * one.plane(Deriv::YYYY).cwiseAbs().maxCoeff());
  CHECK_THROWS_AS(synthesize_modal({&p}, {1.0, 2.0}, grid), ValidationError);
}

TEST_CASE("frequency conversion guards its domain") {
  CHECK(frequency_hz(38.585688966, model().M, model().geometry.ell) ==
        doctest::Approx(0.0404).epsilon(2e-3));
  CHECK_THROWS_AS(frequency_hz(-1.0, model().M, model().geometry.ell), ValidationError);
  CHECK_THROWS_AS(frequency_hz(1.0, 0.0, model().geometry.ell), ValidationError);
}
