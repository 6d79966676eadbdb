#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "orthoplate/elasticity.hpp"
#include "orthoplate/field.hpp"
#include "orthoplate/plate.hpp"

namespace orthoplate::testing {

/// Random admissible orthotropic constants.  The normalized Poisson couplings
/// r_ij = nu_ij sqrt(E_j / E_i) are confined to |r| <= 0.45, which keeps the
/// normal compliance block positive definite (its scaled form is a correlation
/// matrix with off-diagonal entries -r_ij).
inline OrthotropicConstants random_orthotropic(std::mt19937& rng) {
  std::uniform_real_distribution<double> modulus(0.5, 5.0);
  std::uniform_real_distribution<double> shear(0.2, 2.0);
  std::uniform_real_distribution<double> coupling(0.02, 0.45);
  std::bernoulli_distribution flip(0.25);
  OrthotropicConstants c;
  c.E1 = modulus(rng);
  c.E2 = modulus(rng);
  c.E3 = modulus(rng);
  const double r12 = coupling(rng) * (flip(rng) ? -1.0 : 1.0);
  const double r13 = coupling(rng) * (flip(rng) ? -1.0 : 1.0);
  const double r23 = coupling(rng) * (flip(rng) ? -1.0 : 1.0);
  c.nu12 = r12 * std::sqrt(c.E1 / c.E2);
  c.nu13 = r13 * std::sqrt(c.E1 / c.E3);
  c.nu23 = r23 * std::sqrt(c.E2 / c.E3);
  c.mu12 = shear(rng);
  c.mu13 = shear(rng);
  c.mu23 = shear(rng);
  return c.with_reciprocal();
}

/// Random admissible transversely isotropic constants (reinforced along x1).
inline TransverselyIsotropicConstants random_ti(std::mt19937& rng) {
  std::uniform_real_distribution<double> modulus(0.5, 5.0);
  std::uniform_real_distribution<double> ratio(1.0, 50.0);
  std::uniform_real_distribution<double> poisson(0.05, 0.45);
  std::uniform_real_distribution<double> shear(0.2, 2.0);
  TransverselyIsotropicConstants c;
  c.E2 = modulus(rng);
  c.E1 = c.E2 * ratio(rng);
  c.nu12 = poisson(rng);
  c.nu23 = poisson(rng);
  c.mu12 = c.E2 * shear(rng);
  return c;
}

/// The bundled reference plate (original Tacoma Narrows deck parameters).
inline PlateModel tacoma_model() {
  PlateGeometry geom;
  geom.L = 853.44;
  geom.ell = 6.0;
  const PlateMaterial mat = PlateMaterial::derive(2.1e11, 1.687e9, 0.2);
  return PlateModel::make(geom, mat, 7198.0, std::nullopt, 2.109e7);
}

/// One separable term c sin(mu x) cos(q y + phi) of an analytic test field.
struct FieldTerm {
  double c = 0;
  int m = 1;
  double q = 0;
  double phi = 0;
};

/// Synthesizes a field from separable terms, with exact derivative planes.
/// Every term vanishes on the x-edges, so the result lies in the energy space.
inline DisplacementField analytic_field(const Grid& grid, const std::vector<FieldTerm>& terms) {
  DisplacementField f = DisplacementField::zero(grid);
  for (Deriv d : {Deriv::XX, Deriv::XY, Deriv::YY, Deriv::XXY, Deriv::YYY, Deriv::XXXX,
                  Deriv::XXYY, Deriv::YYYY}) {
    f.derivs[d] = Eigen::MatrixXd::Zero(grid.nx, grid.ny);
  }
  for (const FieldTerm& t : terms) {
    const double mu = t.m * M_PI / grid.L;
    for (int i = 0; i < grid.nx; ++i) {
      const double sx = std::sin(mu * grid.x(i));
      const double cx = std::cos(mu * grid.x(i));
      for (int j = 0; j < grid.ny; ++j) {
        const double cy = std::cos(t.q * grid.y(j) + t.phi);
        const double sy = std::sin(t.q * grid.y(j) + t.phi);
        const double q2 = t.q * t.q;
        f.u(i, j) += t.c * sx * cy;
        f.derivs[Deriv::XX](i, j) += -t.c * mu * mu * sx * cy;
        f.derivs[Deriv::XY](i, j) += -t.c * mu * cx * t.q * sy;
        f.derivs[Deriv::YY](i, j) += -t.c * q2 * sx * cy;
        f.derivs[Deriv::XXY](i, j) += t.c * mu * mu * sx * t.q * sy;
        f.derivs[Deriv::YYY](i, j) += t.c * q2 * t.q * sx * sy;
        f.derivs[Deriv::XXXX](i, j) += t.c * mu * mu * mu * mu * sx * cy;
        f.derivs[Deriv::XXYY](i, j) += t.c * mu * mu * q2 * sx * cy;
        f.derivs[Deriv::YYYY](i, j) += t.c * q2 * q2 * sx * cy;
      }
    }
  }
  return f;
}

/// A reproducible random analytic field with a handful of separable terms.
inline DisplacementField random_field(const Grid& grid, std::mt19937& rng, int nterms = 3) {
  std::uniform_real_distribution<double> amp(-1.0, 1.0);
  std::uniform_int_distribution<int> mode(1, 4);
  std::uniform_real_distribution<double> wave(0.1, 2.5);
  std::uniform_real_distribution<double> phase(0.0, 2.0 * M_PI);
  std::vector<FieldTerm> terms;
  for (int k = 0; k < nterms; ++k) {
    terms.push_back({amp(rng), mode(rng), wave(rng) / grid.ell, phase(rng)});
  }
  return analytic_field(grid, terms);
}

/// Random symmetric strain with entries of order one.
inline SymTensor3 random_strain(std::mt19937& rng) {
  std::uniform_real_distribution<double> amp(-1.0, 1.0);
  Vector6d v;
  for (int i = 0; i < 6; ++i) v[i] = amp(rng);
  return SymTensor3(v);
}

}  // namespace orthoplate::testing
