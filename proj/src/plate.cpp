#include "orthoplate/plate.hpp"

#include <cmath>
#include <fmt/format.h>

namespace orthoplate {

void PlateGeometry::validate() const {
  if (!(L > 0) || !(ell > 0) || !(d > 0)) {
    throw ValidationError(
        fmt::format("plate geometry must be positive, got L={:g} ell={:g} d={:g}", L, ell, d));
  }
}

PlateMaterial PlateMaterial::derive(double E1, double E2, double nu) {
  if (!(E1 > E2) || !(E2 > 0)) {
    throw ValidationError(fmt::format(
        "reinforcement requires E1 > E2 > 0, got E1={:g} E2={:g}", E1, E2));
  }
  if (!(nu > 0) || !(nu < 0.5)) {
    throw ValidationError(fmt::format("nu must lie in (0, 1/2), got {:g}", nu));
  }
  PlateMaterial m;
  m.E1 = E1;
  m.E2 = E2;
  m.nu = nu;
  m.nu21 = nu * E2 / E1;
  m.Kcal = E2 / (1.0 - nu * m.nu21);
  m.kappa = (E1 - E2) / E2;
  m.mu12 = m.Kcal * (1.0 - nu) / 2.0;
  return m;
}

TransverselyIsotropicConstants PlateMaterial::constants(double nu23) const {
  TransverselyIsotropicConstants c;
  c.E1 = E1;
  c.E2 = E2;
  c.nu12 = nu;
  c.nu23 = nu23;
  c.mu12 = mu12;
  return c;
}

std::pair<double, double> rigidity_thickness(const PlateMaterial& material,
                                             std::optional<double> d, std::optional<double> R) {
  if (d.has_value() == R.has_value()) {
    throw ValidationError("exactly one of thickness d and rigidity R must be supplied");
  }
  if (d) {
    if (!(*d > 0)) throw ValidationError(fmt::format("thickness must be positive, got {:g}", *d));
    return {*d, std::pow(*d, 3) * material.Kcal / 12.0};
  }
  if (!(*R > 0)) throw ValidationError(fmt::format("rigidity must be positive, got {:g}", *R));
  return {std::cbrt(12.0 * *R / material.Kcal), *R};
}

PlateModel PlateModel::make(const PlateGeometry& geometry_without_d, const PlateMaterial& material,
                            double M, std::optional<double> d, std::optional<double> R,
                            double nu23) {
  if (!(M > 0)) throw ValidationError(fmt::format("mass density must be positive, got {:g}", M));
  const auto [dv, Rv] = rigidity_thickness(material, d, R);
  PlateModel model;
  model.geometry = geometry_without_d;
  model.geometry.d = dv;
  model.geometry.validate();
  model.material = material;
  model.M = M;
  model.R = Rv;
  model.nu23 = nu23;
  return model;
}

EnergyCoefficients energy_coefficients(const PlateMaterial& material, double nu23) {
  if (!(std::abs(nu23) < 1)) {
    throw ValidationError(fmt::format("nu23 must satisfy |nu23| < 1, got {:g}", nu23));
  }
  const OrthotropicConstants full = material.constants(nu23).expand();
  const double d = delta(full);
  const double E1 = material.E1, E2 = material.E2, nu12 = material.nu;
  const double denom = E1 - E2 * nu12 * nu12;
  const double bracket = (1.0 + nu23) * (E1 * (1.0 - nu23) - 2.0 * E2 * nu12 * nu12);
  EnergyCoefficients k;
  k.K11 = bracket / (d * E2 * E2 * denom);
  k.K22 = bracket / (d * E1 * E2 * denom);
  k.K1122 = nu12 * bracket / (d * E1 * E2 * denom);
  k.K1212 = 2.0 * material.mu12;
  return k;
}

SymTensor3 midplane_strains(const PlateModel& model, double uxx, double uyy, double uxy,
                            double z) {
  if (std::abs(z) > 0.5 * model.geometry.d) {
    throw ValidationError(
        fmt::format("|z| = {:g} exceeds half thickness {:g}", std::abs(z), 0.5 * model.geometry.d));
  }
  const double E1 = model.material.E1, E2 = model.material.E2;
  const double nu12 = model.material.nu, nu23 = model.nu23;
  SymTensor3 e;
  e(0, 0) = -z * uxx;
  e(1, 1) = -z * uyy;
  e(0, 1) = -z * uxy;
  // sigma33 = 0 expressed through the curvature strains.
  e(2, 2) = -(nu12 * E1 * (1.0 + nu23) * e(0, 0) + (E1 * nu23 + E2 * nu12 * nu12) * e(1, 1)) /
            (E1 - E2 * nu12 * nu12);
  return e;
}

namespace {

// Integrand planes shared by the energy and inner-product routines.
struct SecondDerivs {
  const Eigen::MatrixXd& xx;
  const Eigen::MatrixXd& xy;
  const Eigen::MatrixXd& yy;
};

SecondDerivs second_derivs(const DisplacementField& f) {
  return {f.plane(Deriv::XX), f.plane(Deriv::XY), f.plane(Deriv::YY)};
}

}  // namespace

double bending_energy(const PlateModel& model, const DisplacementField& field) {
  const auto d2 = second_derivs(field);
  const double nu = model.material.nu, kappa = model.material.kappa;
  const Grid& g = field.grid;
  Eigen::MatrixXd integrand(g.nx, g.ny);
  for (int i = 0; i < g.nx; ++i) {
    for (int j = 0; j < g.ny; ++j) {
      const double lap = d2.xx(i, j) + d2.yy(i, j);
      const double hess2 = d2.xx(i, j) * d2.xx(i, j) + 2.0 * d2.xy(i, j) * d2.xy(i, j) +
                           d2.yy(i, j) * d2.yy(i, j);
      integrand(i, j) = nu * lap * lap + (1.0 - nu) * hess2 + kappa * d2.xx(i, j) * d2.xx(i, j);
    }
  }
  const double d3K24 = std::pow(model.geometry.d, 3) * model.material.Kcal / 24.0;
  return d3K24 * integrate(integrand, g);
}

double bending_energy_expanded(const PlateModel& model, const DisplacementField& field) {
  const auto d2 = second_derivs(field);
  const double nu = model.material.nu;
  const double ratio = model.material.E1 / model.material.E2;
  const Grid& g = field.grid;
  Eigen::MatrixXd integrand(g.nx, g.ny);
  for (int i = 0; i < g.nx; ++i) {
    for (int j = 0; j < g.ny; ++j) {
      integrand(i, j) = ratio * d2.xx(i, j) * d2.xx(i, j) + d2.yy(i, j) * d2.yy(i, j) +
                        2.0 * nu * d2.xx(i, j) * d2.yy(i, j) +
                        2.0 * (1.0 - nu) * d2.xy(i, j) * d2.xy(i, j);
    }
  }
  const double d3K24 = std::pow(model.geometry.d, 3) * model.material.Kcal / 24.0;
  return d3K24 * integrate(integrand, g);
}

double total_energy(const PlateModel& model, const DisplacementField& field,
                    const Eigen::MatrixXd& f) {
  return bending_energy(model, field) - inner_product(f, field.u, field.grid);
}

namespace {

void require_x_edges_zero(const DisplacementField& f, const char* which) {
  const double scale = std::max(f.u.cwiseAbs().maxCoeff(), 1e-300);
  const double edge =
      std::max(f.u.row(0).cwiseAbs().maxCoeff(), f.u.row(f.grid.nx - 1).cwiseAbs().maxCoeff());
  if (edge > 1e-9 * scale) {
    throw ValidationError(fmt::format(
        "field {} does not vanish on the x-edges (violation {:g} at scale {:g})", which, edge,
        scale));
  }
}

}  // namespace

double h2star_inner(const PlateModel& model, const DisplacementField& u,
                    const DisplacementField& v) {
  if (u.grid.nx != v.grid.nx || u.grid.ny != v.grid.ny) {
    throw ValidationError("fields live on different grids");
  }
  require_x_edges_zero(u, "u");
  require_x_edges_zero(v, "v");
  const auto du = second_derivs(u);
  const auto dv = second_derivs(v);
  const double nu = model.material.nu, kappa = model.material.kappa;
  const Grid& g = u.grid;
  Eigen::MatrixXd integrand(g.nx, g.ny);
  for (int i = 0; i < g.nx; ++i) {
    for (int j = 0; j < g.ny; ++j) {
      const double lap_u = du.xx(i, j) + du.yy(i, j);
      const double lap_v = dv.xx(i, j) + dv.yy(i, j);
      const double hess = du.xx(i, j) * dv.xx(i, j) + 2.0 * du.xy(i, j) * dv.xy(i, j) +
                          du.yy(i, j) * dv.yy(i, j);
      integrand(i, j) =
          nu * lap_u * lap_v + (1.0 - nu) * hess + kappa * du.xx(i, j) * dv.xx(i, j);
    }
  }
  return integrate(integrand, g);
}

Eigen::MatrixXd interior_residual(const PlateModel& model, const DisplacementField& field,
                                  const Eigen::MatrixXd& f) {
  const Grid& g = field.grid;
  if (f.rows() != g.nx || f.cols() != g.ny) {
    throw ValidationError("load plane does not match the field grid");
  }
  const Eigen::MatrixXd& uxxxx = field.plane(Deriv::XXXX);
  const Eigen::MatrixXd& uxxyy = field.plane(Deriv::XXYY);
  const Eigen::MatrixXd& uyyyy = field.plane(Deriv::YYYY);
  const double R = model.R, kappa = model.material.kappa;
  // Alternative grouping of the same operator; the leading coefficient is
  // E1 d^3 / (12 (1 - nu12 nu21)) = R (1 + kappa).
  const double lead = model.material.E1 * std::pow(model.geometry.d, 3) /
                      (12.0 * (1.0 - model.material.nu * model.material.nu21));
  Eigen::MatrixXd r = Eigen::MatrixXd::Zero(g.nx, g.ny);
  double worst = 0;
  for (int i = 1; i + 1 < g.nx; ++i) {
    for (int j = 1; j + 1 < g.ny; ++j) {
      const double biharmonic = uxxxx(i, j) + 2.0 * uxxyy(i, j) + uyyyy(i, j);
      const double a = R * (biharmonic + kappa * uxxxx(i, j)) - f(i, j);
      const double b = lead * uxxxx(i, j) + 2.0 * R * uxxyy(i, j) + R * uyyyy(i, j) - f(i, j);
      const double scale = std::max(
          {std::abs(lead * uxxxx(i, j)), std::abs(R * uxxyy(i, j)), std::abs(R * uyyyy(i, j)),
           std::abs(f(i, j)), 1e-300});
      worst = std::max(worst, std::abs(a - b) / scale);
      r(i, j) = a;
    }
  }
  if (worst > 1e-12) {
    throw NumericalError(
        fmt::format("operator groupings disagree by {:g} relative; coefficient identity broken",
                    worst));
  }
  return r;
}

double relative_interior_residual(const PlateModel& model, const DisplacementField& field,
                                  const Eigen::MatrixXd& f) {
  const Eigen::MatrixXd r = interior_residual(model, field, f);
  const Grid& g = field.grid;
  const double R = model.R, kappa = model.material.kappa;
  double scale = f.cwiseAbs().maxCoeff();
  for (int i = 1; i + 1 < g.nx; ++i) {
    for (int j = 1; j + 1 < g.ny; ++j) {
      scale = std::max({scale, std::abs(R * (1.0 + kappa) * field.plane(Deriv::XXXX)(i, j)),
                        std::abs(2.0 * R * field.plane(Deriv::XXYY)(i, j)),
                        std::abs(R * field.plane(Deriv::YYYY)(i, j))});
    }
  }
  return r.cwiseAbs().maxCoeff() / std::max(scale, 1e-300);
}

BoundaryResiduals boundary_residuals(const PlateModel& model, const DisplacementField& field) {
  const Grid& g = field.grid;
  const Eigen::MatrixXd& u = field.u;
  const Eigen::MatrixXd& uxx = field.plane(Deriv::XX);
  const Eigen::MatrixXd& uyy = field.plane(Deriv::YY);
  const Eigen::MatrixXd& uyyy = field.plane(Deriv::YYY);
  const Eigen::MatrixXd& uxxy = field.plane(Deriv::XXY);
  const double nu = model.material.nu;
  BoundaryResiduals r;
  for (int j = 0; j < g.ny; ++j) {
    for (int i : {0, g.nx - 1}) {
      r.navier_value = std::max(r.navier_value, std::abs(u(i, j)));
      r.navier_curvature = std::max(r.navier_curvature, std::abs(uxx(i, j)));
    }
  }
  for (int i = 0; i < g.nx; ++i) {
    for (int j : {0, g.ny - 1}) {
      r.free_moment = std::max(r.free_moment, std::abs(uyy(i, j) + nu * uxx(i, j)));
      r.free_shear = std::max(r.free_shear, std::abs(uyyy(i, j) + (2.0 - nu) * uxxy(i, j)));
    }
  }
  return r;
}

double relative_boundary_residual(const PlateModel& model, const DisplacementField& field) {
  const BoundaryResiduals r = boundary_residuals(model, field);
  const double nu = model.material.nu;
  const double su = field.u.cwiseAbs().maxCoeff();
  const double sxx = field.plane(Deriv::XX).cwiseAbs().maxCoeff();
  const double syy = field.plane(Deriv::YY).cwiseAbs().maxCoeff();
  const double syyy = field.plane(Deriv::YYY).cwiseAbs().maxCoeff();
  const double sxxy = field.plane(Deriv::XXY).cwiseAbs().maxCoeff();
  double worst = 0;
  worst = std::max(worst, r.navier_value / std::max(su, 1e-300));
  worst = std::max(worst, r.navier_curvature / std::max(sxx, 1e-300));
  worst = std::max(worst, r.free_moment / std::max(std::max(syy, nu * sxx), 1e-300));
  worst = std::max(worst,
                   r.free_shear / std::max(std::max(syyy, (2.0 - nu) * sxxy), 1e-300));
  return worst;
}

}  // namespace orthoplate
