#pragma once

#include "orthoplate/spectral.hpp"

namespace orthoplate {

/// Separable solution u(x, y, t) = amplitude * sin(omega t) U(x, y) of the free
/// plate equation of motion; omega is determined by the eigenvalue.
struct StationaryWave {
  EigenPair pair;
  double amplitude = 0;
  double omega = 0;
};

StationaryWave stationary_wave(const EigenPair& pair, double amplitude);

/// The wave displacement field at time t.
DisplacementField wave_field(const StationaryWave& wave, double t, const Grid& grid);

/// Relative residual of (M / 2ell) u_tt + R (Lap^2 u + kappa u_xxxx) at time t,
/// evaluated from exact derivative planes.  Zero when the amplitude or sin(omega t)
/// vanishes.
double wave_pde_residual(const PlateModel& model, const StationaryWave& wave, double t,
                         const Grid& grid);

/// Modal coordinates of the free evolution (M / 2ell) u_tt + A u = 0: coefficients
/// a_k and velocities adot_k at t = 0 for a set of eigenpairs.  The evolution is
/// closed form, a_k(t) = a_k(0) cos(omega_k t) + (adot_k(0)/omega_k) sin(omega_k t);
/// no time stepping is involved, so the modal energy
///   E = sum_k (M/(4 ell)) adot_k^2 + (lambda_k / 2) a_k^2
/// is conserved exactly.
struct ModalState {
  std::vector<EigenPair> modes;
  Eigen::VectorXd a0;
  Eigen::VectorXd v0;
  double M = 0, ell = 0;
  double truncation_u = 0;  ///< relative L2 remainder of u0 outside the modal span
  double truncation_v = 0;
};

/// Builds a state directly from coefficients (sizes must match).
ModalState modal_state(const PlateModel& model, const std::vector<EigenPair>& modes,
                       const Eigen::VectorXd& a0, const Eigen::VectorXd& v0);

/// L2-projects initial displacement and velocity onto the spectrum's eigenfields:
/// a_k = <u0, U_k> / ||U_k||^2 by Simpson quadrature on the fields' grid.
/// Both fields must vanish on the x-edges; the truncation remainders are recorded.
ModalState project_initial(const PlateModel& model, const DisplacementField& u0,
                           const DisplacementField& v0, const Spectrum& spectrum);

/// Modal coefficients and their time derivatives at time t.
Eigen::VectorXd coefficients_at(const ModalState& state, double t);
Eigen::VectorXd velocities_at(const ModalState& state, double t);

/// Displacement and velocity fields at time t (exact modal synthesis).
DisplacementField evolve(const ModalState& state, double t, const Grid& grid);
DisplacementField velocity_field(const ModalState& state, double t, const Grid& grid);

/// (kinetic, bending) energy at time t from the closed-form modal sums
/// (M/(4 ell)) sum adot_k^2 and sum (lambda_k / 2) a_k^2, exact by the L2(Omega)
/// normalization and mutual orthogonality of the eigenfields.
std::pair<double, double> energy_split(const ModalState& state, double t);

/// The conserved total energy sum_k (lambda_k / 2) (a_k(0)^2 + (adot_k(0)/omega_k)^2).
double conserved_energy(const ModalState& state);

}  // namespace orthoplate
