#pragma once

#include <optional>

#include "orthoplate/elasticity.hpp"
#include "orthoplate/field.hpp"

namespace orthoplate {

/// Rectangular plate occupying (0, L) x (-ell, ell) with thickness d.
struct PlateGeometry {
  double L = 0;    ///< length (m)
  double ell = 0;  ///< half width (m)
  double d = 0;    ///< thickness (m)

  void validate() const;
};

/// In-plane elastic description of the reinforced plate: the moduli E1 (along the
/// reinforced x direction) and E2, the Poisson ratio nu = nu12, and the values
/// derived from them alone:
///   nu21  = nu E2 / E1          (reciprocity)
///   Kcal  = E2 / (1 - nu nu21)  (plate modulus)
///   kappa = (E1 - E2) / E2      (reinforcement ratio)
///   mu12  = Kcal (1 - nu) / 2   (in-plane shear modulus)
struct PlateMaterial {
  double E1 = 0, E2 = 0;
  double nu = 0;
  double nu21 = 0;
  double Kcal = 0;
  double kappa = 0;
  double mu12 = 0;

  /// Builds the material and populates all derived fields.
  /// Requires E1 > E2 > 0 (reinforcement along x) and 0 < nu < 1/2.
  static PlateMaterial derive(double E1, double E2, double nu);

  /// The five-constant description with the given transverse Poisson ratio.
  TransverselyIsotropicConstants constants(double nu23) const;
};

/// Conversion between thickness and rigidity R = d^3 Kcal / 12.
/// Exactly one of d, R must be supplied; the other is computed.
std::pair<double, double> rigidity_thickness(const PlateMaterial& material,
                                             std::optional<double> d, std::optional<double> R);

/// Complete plate model: geometry, material, linear mass density M, rigidity R,
/// and the transverse Poisson ratio nu23 (used only to reconstruct 3D strains;
/// the plate energy does not depend on it).
struct PlateModel {
  PlateGeometry geometry;
  PlateMaterial material;
  double M = 0;     ///< mass per unit length (kg/m)
  double R = 0;     ///< rigidity d^3 Kcal / 12 (N m)
  double nu23 = 0.2;

  /// Builds a model given either the thickness or the rigidity (one of them).
  static PlateModel make(const PlateGeometry& geometry_without_d, const PlateMaterial& material,
                         double M, std::optional<double> d, std::optional<double> R,
                         double nu23 = 0.2);

  Grid default_grid(int nx = 201, int ny = 41) const {
    return Grid::make(geometry.L, geometry.ell, nx, ny);
  }
};

/// The four coefficients of the quadratic strain-energy density in the curvatures,
/// as produced by eliminating e33 through sigma33 = 0.
struct EnergyCoefficients {
  double K11 = 0, K22 = 0, K1122 = 0, K1212 = 0;
};

/// Evaluates the four coefficients from their closed forms in (E1, E2, nu12, nu23).
/// The transverse ratio nu23 cancels: K22 = Kcal exactly, K11 = (E1/E2) K22,
/// K1122 = nu12 K22, K1212 = 2 mu12.
EnergyCoefficients energy_coefficients(const PlateMaterial& material, double nu23);

/// Kirchhoff-Love strain state at height z from the curvatures of the midsurface:
/// e11 = -z u_xx, e22 = -z u_yy, e12 = -z u_xy, e13 = e23 = 0, and e33 from the
/// sigma33 = 0 condition.  Requires |z| <= d/2.
SymTensor3 midplane_strains(const PlateModel& model, double uxx, double uyy, double uxy, double z);

/// Bending energy E_B = (d^3 Kcal / 24) Int [ nu |Lap u|^2 + (1 - nu) |D^2 u|^2
/// + kappa u_xx^2 ], by tensor Simpson quadrature of the derivative planes.
double bending_energy(const PlateModel& model, const DisplacementField& field);

/// Bending energy through the expanded integrand (E1/E2) u_xx^2 + u_yy^2
/// + 2 nu u_xx u_yy + 2 (1 - nu) u_xy^2, scaled by d^3 Kcal / 24.  Pointwise equal
/// to the bending_energy integrand; kept separate as an algebraic cross-check.
double bending_energy_expanded(const PlateModel& model, const DisplacementField& field);

/// Total energy E_T = E_B - Int f u for a load plane f on the same grid.
double total_energy(const PlateModel& model, const DisplacementField& field,
                    const Eigen::MatrixXd& f);

/// Energy inner product on the space of fields vanishing at x = 0 and x = L:
/// Int [ nu Lap u Lap v + (1 - nu) D^2 u : D^2 v + kappa u_xx v_xx ].
/// Throws ValidationError if either field violates the x-edge conditions.
/// Satisfies h2star_inner(u, u) = (24 / (d^3 Kcal)) E_B(u) = 2 E_B(u) / R.
double h2star_inner(const PlateModel& model, const DisplacementField& u,
                    const DisplacementField& v);

/// Pointwise equilibrium residual r = R (Lap^2 u + kappa u_xxxx) - f on interior
/// nodes (boundary nodes are set to zero).  Internally cross-checks the equivalent
/// grouping R (1 + kappa) u_xxxx + 2 R u_xxyy + R u_yyyy against the first form to
/// 1e-12 relative and throws NumericalError on disagreement.
Eigen::MatrixXd interior_residual(const PlateModel& model, const DisplacementField& field,
                                  const Eigen::MatrixXd& f);

/// Max-norm of interior_residual relative to the magnitudes of the load and of the
/// individual operator terms.
double relative_interior_residual(const PlateModel& model, const DisplacementField& field,
                                  const Eigen::MatrixXd& f);

/// Max-norms of the four boundary-condition families:
/// u and u_xx on the hinged edges x in {0, L}; u_yy + nu u_xx (bending moment) and
/// u_yyy + (2 - nu) u_xxy (shear) on the free edges y = +-ell.
struct BoundaryResiduals {
  double navier_value = 0;
  double navier_curvature = 0;
  double free_moment = 0;
  double free_shear = 0;
};

BoundaryResiduals boundary_residuals(const PlateModel& model, const DisplacementField& field);

/// Largest of the four boundary residuals, each normalized by the magnitude of the
/// terms entering its defining combination.
double relative_boundary_residual(const PlateModel& model, const DisplacementField& field);

}  // namespace orthoplate
