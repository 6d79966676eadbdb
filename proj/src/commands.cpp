#include "orthoplate/commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <optional>
#include <vector>

#include <fmt/format.h>
#include <fmt/os.h>

#include "json.hpp"
#include "orthoplate/config.hpp"
#include "orthoplate/csv.hpp"
#include "orthoplate/dynamics.hpp"
#include "orthoplate/errors.hpp"
#include "orthoplate/plate.hpp"
#include "orthoplate/spectral.hpp"

namespace orthoplate {

namespace {

using json = nlohmann::ordered_json;

ConfigFile load_config(const GlobalOptions& opt) {
  if (opt.config_path.empty()) {
    throw ValidationError("no configuration given; pass --config <path>");
  }
  return ConfigFile::load(opt.config_path);
}

std::string out_path(const GlobalOptions& opt, const std::string& name) {
  std::filesystem::create_directories(opt.out_dir);
  return (std::filesystem::path(opt.out_dir) / name).string();
}

json matrix_json(const Matrix6d& m) {
  json rows = json::array();
  for (int i = 0; i < 6; ++i) {
    json row = json::array();
    for (int j = 0; j < 6; ++j) row.push_back(m(i, j));
    rows.push_back(row);
  }
  return rows;
}

void print_matrix(const std::string& title, const Matrix6d& m) {
  fmt::print("{}:\n", title);
  for (int i = 0; i < 6; ++i) {
    fmt::print("  ");
    for (int j = 0; j < 6; ++j) {
      fmt::print("{}{}", format_full(m(i, j)), j == 5 ? "\n" : ", ");
    }
  }
}

void emit_json(const json& doc) { fmt::print("{}\n", doc.dump(2)); }

/// Splits "1=0.5,3=0.2" into (rank, value) pairs.
std::vector<std::pair<int, double>> parse_coeff_list(const std::string& text) {
  std::vector<std::pair<int, double>> out;
  size_t pos = 0;
  while (pos < text.size()) {
    size_t comma = text.find(',', pos);
    if (comma == std::string::npos) comma = text.size();
    const std::string item = text.substr(pos, comma - pos);
    const size_t eq = item.find('=');
    if (eq == std::string::npos) {
      throw ValidationError(fmt::format("coefficient list item '{}' is not rank=value", item));
    }
    try {
      out.emplace_back(std::stoi(item.substr(0, eq)), std::stod(item.substr(eq + 1)));
    } catch (const std::exception&) {
      throw ValidationError(fmt::format("cannot parse coefficient item '{}'", item));
    }
    pos = comma + 1;
  }
  if (out.empty()) throw ValidationError("empty coefficient list");
  return out;
}

}  // namespace

int run_command(const std::function<int()>& body) {
  try {
    return body();
  } catch (const ValidationError& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return 2;
  } catch (const NumericalError& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return 3;
  } catch (const std::exception& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return 1;
  }
}

int cmd_material(const GlobalOptions& opt) {
  const ConfigFile cfg = load_config(opt);
  const MaterialSpec spec = material_from_config(cfg);
  spec.constants.validate();

  const Matrix6d S = compliance_matrix(spec.constants);
  const double dlt = delta(spec.constants);
  const Matrix6d C = stiffness_closed_form(spec.constants);
  const Matrix6d Cinv = stiffness_from_compliance(spec.constants);

  const double cscale = C.cwiseAbs().maxCoeff();
  const double route_diff = (C - Cinv).cwiseAbs().maxCoeff() / cscale;
  const double cs_identity = (C * S - Matrix6d::Identity()).cwiseAbs().maxCoeff();
  const OrthotropyCheck ortho = is_orthotropic(C, 1e-10);
  const double c2323 = c2323_residual(C);
  double rot[3];
  for (int axis = 0; axis < 3; ++axis) rot[axis] = rotation_invariance_residual(C, axis);

  bool pass = route_diff <= 1e-10 && cs_identity <= 1e-10 && ortho.orthotropic;
  double reinforced_diff = 0;
  if (spec.reinforced) {
    const Matrix6d Cr = reinforced_stiffness(spec.reinforced_form);
    reinforced_diff = (C - Cr).cwiseAbs().maxCoeff() / cscale;
    pass = pass && reinforced_diff <= 1e-10 && c2323 <= 1e-12 && rot[0] <= 1e-10;
  }

  if (opt.json) {
    json doc;
    doc["delta"] = dlt;
    doc["compliance"] = matrix_json(S);
    doc["stiffness_closed_form"] = matrix_json(C);
    doc["stiffness_inversion"] = matrix_json(Cinv);
    doc["route_difference_rel"] = route_diff;
    doc["cs_identity_residual"] = cs_identity;
    doc["orthotropic"] = ortho.orthotropic;
    doc["orthotropy_residual"] = ortho.residual;
    doc["c2323_residual"] = c2323;
    doc["rotation_residual_x1"] = rot[0];
    doc["rotation_residual_x2"] = rot[1];
    doc["rotation_residual_x3"] = rot[2];
    if (spec.reinforced) doc["reinforced_route_difference_rel"] = reinforced_diff;
    doc["checks_passed"] = pass;
    emit_json(doc);
  } else {
    fmt::print("delta = {}\n", format_full(dlt));
    print_matrix("compliance S", S);
    print_matrix("stiffness C (closed form)", C);
    print_matrix("stiffness C (inversion of S)", Cinv);
    fmt::print("closed form vs inversion (relative): {:.3e}\n", route_diff);
    fmt::print("max |C S - I|: {:.3e}\n", cs_identity);
    fmt::print("orthotropic pattern: {} (residual {:.3e})\n", ortho.orthotropic ? "yes" : "no",
               ortho.residual);
    fmt::print("C2323 shear-identity residual: {:.3e}\n", c2323);
    fmt::print("rotation-invariance residual about x1, x2, x3: {:.3e}, {:.3e}, {:.3e}\n", rot[0],
               rot[1], rot[2]);
    if (spec.reinforced) {
      fmt::print("reinforced closed form vs general closed form (relative): {:.3e}\n",
                 reinforced_diff);
    }
    fmt::print("checks: {}\n", pass ? "PASS" : "FAIL");
  }
  return pass ? 0 : 1;
}

int cmd_spectrum(const GlobalOptions& opt) {
  const ConfigFile cfg = load_config(opt);
  const PlateModel model = plate_model_from_config(cfg);
  const int m_max = opt.m_max > 0 ? opt.m_max : 12;
  const Spectrum spec = assemble_spectrum(model, m_max, opt.k_per_mode);

  write_spectrum_csv(out_path(opt, "spectrum.csv"), spec);

  json summary;
  summary["vertical_hz"] = spec.vert_hz;
  summary["torsional_hz"] = spec.tors_hz;
  summary["lambda_vert"] = spec.lambda_vert;
  summary["lambda_tors"] = spec.lambda_tors;
  summary["m_max"] = spec.m_max;
  summary["k_per_mode"] = spec.k_per_mode;
  summary["certified_below"] = spec.certified_below;
  {
    auto out = fmt::output_file(out_path(opt, "summary.json"));
    out.print("{}\n", summary.dump(2));
  }

  if (opt.json) {
    emit_json(summary);
  } else {
    const int nvert = std::min<int>(10, static_cast<int>(spec.vert_hz.size()));
    const int ntors = std::min<int>(8, static_cast<int>(spec.tors_hz.size()));
    fmt::print("{:<14}", "m");
    for (int m = 1; m <= std::max(nvert, ntors); ++m) fmt::print("{:>9}", m);
    fmt::print("\n{:<14}", "vertical_hz");
    for (int i = 0; i < nvert; ++i) fmt::print("{:>9.4f}", spec.vert_hz[i]);
    fmt::print("\n{:<14}", "torsional_hz");
    for (int i = 0; i < ntors; ++i) fmt::print("{:>9.4f}", spec.tors_hz[i]);
    fmt::print("\n");
    fmt::print("wrote {} eigenvalues; completeness certified below lambda = {}\n",
               spec.pairs.size(), format_full(spec.certified_below));
  }
  const bool complete =
      spec.pairs.empty() || spec.pairs.back().lambda <= spec.certified_below;
  if (!complete && !opt.json) {
    fmt::print("note: ranks above the certification threshold may skip eigenvalues\n");
  }
  return 0;
}

int cmd_modeshape(const GlobalOptions& opt, int m, const std::string& parity, int index) {
  const ConfigFile cfg = load_config(opt);
  const PlateModel model = plate_model_from_config(cfg);
  const Grid grid = grid_from_config(cfg, model, opt.nx, opt.ny);
  if (m < 1) throw ValidationError(fmt::format("mode number must be >= 1, got {}", m));
  if (index < 1) throw ValidationError(fmt::format("mode index must be >= 1, got {}", index));

  std::string pl = parity;
  std::transform(pl.begin(), pl.end(), pl.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  Parity par;
  if (pl == "even") {
    par = Parity::Even;
  } else if (pl == "odd") {
    par = Parity::Odd;
  } else {
    throw ValidationError(fmt::format("parity must be 'even' or 'odd', got '{}'", parity));
  }

  const ModeProblem mode = ModeProblem::reduce(model, m);
  const std::vector<EigenPair> pairs = solve_mode_eigs(mode, par, index);
  const EigenPair& pair = pairs[static_cast<size_t>(index - 1)];

  const std::string stem = fmt::format("modeshape_m{}_{}{}", m, pl, index);
  const std::string field_file = out_path(opt, stem + ".csv");
  const std::string profile_file = out_path(opt, stem + "_profile.csv");
  write_field_csv(field_file, pair.field(grid));
  Eigen::VectorXd ys(grid.ny);
  for (int j = 0; j < grid.ny; ++j) ys[j] = grid.y(j);
  write_eigenfunction_csv(profile_file, pair, ys);

  if (opt.json) {
    json doc;
    doc["m"] = m;
    doc["parity"] = pl;
    doc["index"] = index;
    doc["lambda_N_per_m3"] = pair.lambda;
    doc["frequency_hz"] = pair.nu_hz;
    doc["rayleigh_residual"] = pair.rayleigh_residual;
    doc["field_csv"] = field_file;
    doc["profile_csv"] = profile_file;
    emit_json(doc);
  } else {
    fmt::print("mode m={} {} #{}: lambda = {} N/m^3, frequency = {} Hz\n", m, pl, index,
               format_full(pair.lambda), format_full(pair.nu_hz));
    fmt::print("wrote {} and {}\n", field_file, profile_file);
  }
  return 0;
}

int cmd_solve(const GlobalOptions& opt, const std::string& load_spec) {
  const ConfigFile cfg = load_config(opt);
  const PlateModel model = plate_model_from_config(cfg);
  const Grid grid = grid_from_config(cfg, model, opt.nx, opt.ny);
  const int m_max = opt.m_max > 0 ? opt.m_max : 25;

  Eigen::MatrixXd f(grid.nx, grid.ny);
  if (load_spec.rfind("uniform:", 0) == 0) {
    double v = 0;
    try {
      v = std::stod(load_spec.substr(8));
    } catch (const std::exception&) {
      throw ValidationError(fmt::format("cannot parse uniform load value in '{}'", load_spec));
    }
    f.setConstant(v);
  } else if (load_spec.rfind("csv:", 0) == 0) {
    f = read_field_csv(load_spec.substr(4), grid);
  } else if (load_spec.rfind("mode:", 0) == 0) {
    int lm = 0;
    try {
      lm = std::stoi(load_spec.substr(5));
    } catch (const std::exception&) {
      throw ValidationError(fmt::format("cannot parse mode number in '{}'", load_spec));
    }
    if (lm < 1 || lm > m_max) {
      throw ValidationError(
          fmt::format("mode load number must lie in [1, m_max = {}], got {}", m_max, lm));
    }
    const double mu = lm * M_PI / model.geometry.L;
    for (int i = 0; i < grid.nx; ++i) f.row(i).setConstant(std::sin(mu * grid.x(i)));
  } else {
    throw ValidationError(fmt::format(
        "load spec '{}' not understood; use uniform:<value>, csv:<path>, or mode:<m>",
        load_spec));
  }

  StaticReport report;
  const DisplacementField u = static_solve(model, f, grid, m_max, &report);
  const std::string file = out_path(opt, "solution.csv");
  write_field_csv(file, u);

  if (opt.json) {
    json doc;
    doc["load"] = load_spec;
    doc["m_max"] = report.m_max;
    doc["truncation_rel"] = report.truncation_rel;
    doc["interior_residual_rel"] = report.interior_rel;
    doc["boundary_residual_rel"] = report.boundary_rel;
    doc["bending_energy_J"] = report.bending_energy;
    doc["total_energy_J"] = report.total_energy;
    doc["solution_csv"] = file;
    emit_json(doc);
  } else {
    fmt::print("load {} expanded through m = {} x-harmonics\n", load_spec, report.m_max);
    fmt::print("load truncation (relative L2): {:.3e}\n", report.truncation_rel);
    fmt::print("interior equilibrium residual (relative): {:.3e}\n", report.interior_rel);
    fmt::print("boundary-condition residual (relative): {:.3e}\n", report.boundary_rel);
    fmt::print("bending energy E_B = {} J\n", format_full(report.bending_energy));
    fmt::print("total energy E_T = {} J\n", format_full(report.total_energy));
    fmt::print("wrote {}\n", file);
  }
  return 0;
}

int cmd_evolve(const GlobalOptions& opt, const std::string& initial_spec, double t_end,
               int samples, int snapshots) {
  const ConfigFile cfg = load_config(opt);
  const PlateModel model = plate_model_from_config(cfg);
  const Grid grid = grid_from_config(cfg, model, opt.nx, opt.ny);
  const int m_max = opt.m_max > 0 ? opt.m_max : 12;
  if (samples < 2) throw ValidationError("evolve needs at least 2 samples");

  const Spectrum spec = assemble_spectrum(model, m_max, opt.k_per_mode);
  if (spec.pairs.empty()) throw NumericalError("empty spectrum: nothing to evolve");
  const auto n = static_cast<Eigen::Index>(spec.pairs.size());

  ModalState state;
  bool from_fields = false;
  Eigen::VectorXd a0 = Eigen::VectorXd::Zero(n), v0 = Eigen::VectorXd::Zero(n);
  size_t pos = 0;
  while (pos < initial_spec.size()) {
    size_t semi = initial_spec.find(';', pos);
    if (semi == std::string::npos) semi = initial_spec.size();
    const std::string part = initial_spec.substr(pos, semi - pos);
    pos = semi + 1;
    if (part.rfind("coeffs:", 0) == 0 || part.rfind("vcoeffs:", 0) == 0) {
      const bool vel = part[0] == 'v';
      Eigen::VectorXd& target = vel ? v0 : a0;
      for (const auto& [rank, value] : parse_coeff_list(part.substr(vel ? 8 : 7))) {
        if (rank < 1 || rank > n) {
          throw ValidationError(fmt::format(
              "coefficient rank {} outside the assembled spectrum (1..{})", rank, n));
        }
        target[rank - 1] = value;
      }
    } else if (part.rfind("csv:", 0) == 0) {
      from_fields = true;
      const std::string paths = part.substr(4);
      const size_t comma = paths.find(',');
      DisplacementField u0f = DisplacementField::zero(grid);
      DisplacementField v0f = DisplacementField::zero(grid);
      u0f.u = read_field_csv(comma == std::string::npos ? paths : paths.substr(0, comma), grid);
      if (comma != std::string::npos) v0f.u = read_field_csv(paths.substr(comma + 1), grid);
      state = project_initial(model, u0f, v0f, spec);
    } else {
      throw ValidationError(fmt::format(
          "initial spec part '{}' not understood; use coeffs:..., vcoeffs:..., or csv:...",
          part));
    }
  }
  if (!from_fields) {
    state = modal_state(model, spec.pairs, a0, v0);
  }

  // Period of the slowest mode carrying initial data (all modes if none does).
  double omega_slow = 0;
  int active = 0, last_active = -1;
  for (Eigen::Index k = 0; k < n; ++k) {
    if (state.a0[k] != 0.0 || state.v0[k] != 0.0) {
      if (omega_slow == 0.0) omega_slow = state.modes[static_cast<size_t>(k)].omega;
      omega_slow = std::min(omega_slow, state.modes[static_cast<size_t>(k)].omega);
      ++active;
      last_active = static_cast<int>(k);
    }
  }
  if (omega_slow == 0.0) omega_slow = state.modes.front().omega;
  const double period = 2.0 * M_PI / omega_slow;
  if (t_end <= 0) t_end = 5.0 * period;

  std::vector<double> times(static_cast<size_t>(samples));
  Eigen::MatrixXd coeffs(samples, n);
  double e0 = 0, drift = 0;
  for (int r = 0; r < samples; ++r) {
    const double t = t_end * r / (samples - 1);
    times[static_cast<size_t>(r)] = t;
    coeffs.row(r) = coefficients_at(state, t).transpose();
    const auto [kin, bend] = energy_split(state, t);
    const double e = kin + bend;
    if (r == 0) {
      e0 = e;
    } else if (e0 > 0) {
      drift = std::max(drift, std::abs(e - e0) / e0);
    }
  }
  const std::string traj_file = out_path(opt, "trajectory.csv");
  write_trajectory_csv(traj_file, times, coeffs);

  std::vector<std::string> snapshot_files;
  if (snapshots > 0) {
    for (int s = 0; s < snapshots; ++s) {
      const int r = snapshots == 1 ? 0 : static_cast<int>(std::lround(
                                             static_cast<double>(s) * (samples - 1) /
                                             (snapshots - 1)));
      const std::string name = fmt::format("snapshot_{:03}.csv", s);
      write_field_csv(out_path(opt, name), evolve(state, times[static_cast<size_t>(r)], grid));
      snapshot_files.push_back(name);
    }
  }

  if (opt.json) {
    json doc;
    doc["modes"] = n;
    doc["t_end_s"] = t_end;
    doc["samples"] = samples;
    doc["energy_J"] = e0;
    doc["max_relative_energy_drift"] = drift;
    if (active == 1) {
      const EigenPair& p = state.modes[static_cast<size_t>(last_active)];
      doc["stationary_wave"] = true;
      doc["period_s"] = 1.0 / p.nu_hz;
      doc["frequency_hz"] = p.nu_hz;
    }
    doc["trajectory_csv"] = traj_file;
    doc["snapshots"] = snapshot_files;
    emit_json(doc);
  } else {
    fmt::print("evolved {} modes over [0, {}] s with {} samples\n", n, format_full(t_end),
               samples);
    fmt::print("total energy {} J, max relative drift {:.3e}\n", format_full(e0), drift);
    if (active == 1) {
      const EigenPair& p = state.modes[static_cast<size_t>(last_active)];
      fmt::print("single-mode start: stationary wave with period {} s (frequency {} Hz)\n",
                 format_full(1.0 / p.nu_hz), format_full(p.nu_hz));
    }
    fmt::print("wrote {}\n", traj_file);
    for (const std::string& s : snapshot_files) fmt::print("wrote {}\n", out_path(opt, s));
  }
  return 0;
}

}  // namespace orthoplate
