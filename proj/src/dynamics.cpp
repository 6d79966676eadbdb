#include "orthoplate/dynamics.hpp"

#include <cmath>

#include <fmt/format.h>

#include "orthoplate/errors.hpp"

namespace orthoplate {

StationaryWave stationary_wave(const EigenPair& pair, double amplitude) {
  StationaryWave w;
  w.pair = pair;
  w.amplitude = amplitude;
  w.omega = pair.omega;
  return w;
}

DisplacementField wave_field(const StationaryWave& wave, double t, const Grid& grid) {
  const double c = wave.amplitude * std::sin(wave.omega * t);
  return synthesize_modal({&wave.pair}, {c}, grid);
}

double wave_pde_residual(const PlateModel& model, const StationaryWave& wave, double t,
                         const Grid& grid) {
  const DisplacementField u = wave_field(wave, t, grid);
  const double rho = model.M / (2.0 * model.geometry.ell);
  // u_tt = -omega^2 u for the separable solution; no finite differencing in time.
  const Eigen::MatrixXd inertia = -rho * wave.omega * wave.omega * u.u;
  const Eigen::MatrixXd elastic =
      model.R * ((1.0 + model.material.kappa) * u.plane(Deriv::XXXX) +
                 2.0 * u.plane(Deriv::XXYY) + u.plane(Deriv::YYYY));
  const double scale =
      std::max(inertia.cwiseAbs().maxCoeff(), elastic.cwiseAbs().maxCoeff());
  if (scale == 0.0) return 0.0;
  return (inertia + elastic).cwiseAbs().maxCoeff() / scale;
}

ModalState modal_state(const PlateModel& model, const std::vector<EigenPair>& modes,
                       const Eigen::VectorXd& a0, const Eigen::VectorXd& v0) {
  if (a0.size() != static_cast<Eigen::Index>(modes.size()) || v0.size() != a0.size()) {
    throw ValidationError(fmt::format(
        "modal_state: got {} modes but {} displacement and {} velocity coefficients",
        modes.size(), a0.size(), v0.size()));
  }
  ModalState st;
  st.modes = modes;
  st.a0 = a0;
  st.v0 = v0;
  st.M = model.M;
  st.ell = model.geometry.ell;
  return st;
}

ModalState project_initial(const PlateModel& model, const DisplacementField& u0,
                           const DisplacementField& v0, const Spectrum& spectrum) {
  const Grid& grid = u0.grid;
  if (v0.grid.nx != grid.nx || v0.grid.ny != grid.ny) {
    throw ValidationError("project_initial: displacement and velocity grids differ");
  }
  const auto n = static_cast<Eigen::Index>(spectrum.pairs.size());
  Eigen::VectorXd a0(n), v0c(n);
  DisplacementField ru = u0;  // remainders for the truncation report
  DisplacementField rv = v0;
  for (Eigen::Index k = 0; k < n; ++k) {
    const DisplacementField uk = spectrum.pairs[static_cast<size_t>(k)].field(grid);
    const double nrm2 = inner_product(uk.u, uk.u, uk.grid);
    a0[k] = inner_product(u0.u, uk.u, grid) / nrm2;
    v0c[k] = inner_product(v0.u, uk.u, grid) / nrm2;
    ru.u -= a0[k] * uk.u;
    rv.u -= v0c[k] * uk.u;
  }
  std::vector<EigenPair> modes(spectrum.pairs.begin(), spectrum.pairs.end());
  ModalState st = modal_state(model, modes, a0, v0c);
  const double nu0 = std::sqrt(inner_product(u0.u, u0.u, grid));
  const double nv0 = std::sqrt(inner_product(v0.u, v0.u, grid));
  st.truncation_u = nu0 > 0 ? std::sqrt(inner_product(ru.u, ru.u, grid)) / nu0 : 0.0;
  st.truncation_v = nv0 > 0 ? std::sqrt(inner_product(rv.u, rv.u, grid)) / nv0 : 0.0;
  return st;
}

Eigen::VectorXd coefficients_at(const ModalState& state, double t) {
  const auto n = state.a0.size();
  Eigen::VectorXd a(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const double w = state.modes[static_cast<size_t>(k)].omega;
    a[k] = state.a0[k] * std::cos(w * t) + state.v0[k] / w * std::sin(w * t);
  }
  return a;
}

Eigen::VectorXd velocities_at(const ModalState& state, double t) {
  const auto n = state.a0.size();
  Eigen::VectorXd v(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const double w = state.modes[static_cast<size_t>(k)].omega;
    v[k] = -state.a0[k] * w * std::sin(w * t) + state.v0[k] * std::cos(w * t);
  }
  return v;
}

namespace {

DisplacementField synthesize_state(const ModalState& state, const Eigen::VectorXd& coeffs,
                                   const Grid& grid) {
  std::vector<const EigenPair*> ptrs;
  ptrs.reserve(state.modes.size());
  for (const EigenPair& p : state.modes) ptrs.push_back(&p);
  return synthesize_modal(ptrs, std::vector<double>(coeffs.data(), coeffs.data() + coeffs.size()),
                          grid);
}

}  // namespace

DisplacementField evolve(const ModalState& state, double t, const Grid& grid) {
  return synthesize_state(state, coefficients_at(state, t), grid);
}

DisplacementField velocity_field(const ModalState& state, double t, const Grid& grid) {
  return synthesize_state(state, velocities_at(state, t), grid);
}

std::pair<double, double> energy_split(const ModalState& state, double t) {
  const Eigen::VectorXd a = coefficients_at(state, t);
  const Eigen::VectorXd v = velocities_at(state, t);
  double kinetic = 0, bending = 0;
  for (Eigen::Index k = 0; k < a.size(); ++k) {
    kinetic += state.M / (4.0 * state.ell) * v[k] * v[k];
    bending += 0.5 * state.modes[static_cast<size_t>(k)].lambda * a[k] * a[k];
  }
  return {kinetic, bending};
}

double conserved_energy(const ModalState& state) {
  double e = 0;
  for (Eigen::Index k = 0; k < state.a0.size(); ++k) {
    const EigenPair& p = state.modes[static_cast<size_t>(k)];
    const double q = state.v0[k] / p.omega;
    e += 0.5 * p.lambda * (state.a0[k] * state.a0[k] + q * q);
  }
  return e;
}

}  // namespace orthoplate
