#pragma once

#include <functional>
#include <string>

namespace orthoplate {

/// Options shared by all CLI commands.
struct GlobalOptions {
  std::string config_path;
  std::string out_dir = ".";
  int nx = 0;          ///< 0 means: config value, else the library default
  int ny = 0;
  int m_max = 0;       ///< 0 means: per-command default
  int k_per_mode = 4;
  bool json = false;   ///< machine-readable stdout
};

/// Runs a command body and maps exceptions to the exit-code contract:
/// 0 success, 2 invalid input (ValidationError), 3 numerical incompleteness
/// (NumericalError); any other exception exits 1 with a diagnostic.
/// Diagnostics go to stderr.
int run_command(const std::function<int()>& body);

/// material: builds the stiffness both ways, prints matrices and consistency
/// residuals.  Returns 0 iff every check passes.
int cmd_material(const GlobalOptions& opt);

/// spectrum: assembles the spectrum, writes spectrum.csv and summary.json to the
/// output directory, prints the two-row frequency table (4 decimals, Hz).
int cmd_spectrum(const GlobalOptions& opt);

/// modeshape: writes the normalized eigenfunction of mode (m, parity, index) as a
/// 2D grid CSV plus its cross-section profile.  parity is "even" or "odd",
/// index counts eigenvalues of that family from 1.
int cmd_modeshape(const GlobalOptions& opt, int m, const std::string& parity, int index);

/// solve: static solve under a load given as `uniform:<value>`, `csv:<path>`
/// (grid-matched field CSV), or `mode:<m>` (single-sine load).  Writes
/// solution.csv and prints residual norms, energies, and the truncation report.
int cmd_solve(const GlobalOptions& opt, const std::string& load_spec);

/// evolve: free evolution from initial data given as mode-coefficient lists
/// (`coeffs:1=0.5,3=0.2` for displacement, `vcoeffs:...` for velocity, both parts
/// separated by ';') or field CSVs (`csv:<u0 path>[,<v0 path>]`).  Samples the
/// trajectory on [0, t_end]; t_end <= 0 selects five periods of the slowest mode.
/// Writes trajectory.csv plus `snapshots` evenly spaced field CSVs, prints the
/// conservation report.
int cmd_evolve(const GlobalOptions& opt, const std::string& initial_spec, double t_end,
               int samples, int snapshots);

}  // namespace orthoplate
