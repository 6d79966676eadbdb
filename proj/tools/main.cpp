#include <string>
#include <utility>

#include "CLI11.hpp"
#include "orthoplate/commands.hpp"

namespace {

/// Parses "nx,ny" into the option struct.
void add_grid_option(CLI::App& app, orthoplate::GlobalOptions& opt) {
  app.add_option_function<std::string>(
         "--grid",
         [&opt](const std::string& v) {
           const size_t comma = v.find(',');
           if (comma == std::string::npos) {
             throw CLI::ValidationError("--grid", "expected nx,ny");
           }
           try {
             opt.nx = std::stoi(v.substr(0, comma));
             opt.ny = std::stoi(v.substr(comma + 1));
           } catch (const std::exception&) {
             throw CLI::ValidationError("--grid", "expected integer nx,ny");
           }
         },
         "Grid sizes nx,ny (both odd)")
      ->type_name("NX,NY");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Orthotropic rectangular plate: elasticity checks, spectra, statics, dynamics"};
  app.require_subcommand(1);

  orthoplate::GlobalOptions opt;
  app.add_option("--config", opt.config_path, "Configuration file (key = value lines)")
      ->required();
  app.add_option("--out", opt.out_dir, "Output directory for generated files");
  app.add_option("--m-max", opt.m_max, "Largest x-harmonic index");
  app.add_option("--k-per-mode", opt.k_per_mode, "Eigenvalues per (m, parity) family");
  app.add_flag("--json", opt.json, "Machine-readable JSON on stdout");
  add_grid_option(app, opt);

  // Fallthrough lets the global options appear after the subcommand name too.
  app.add_subcommand("material", "Stiffness/compliance consistency report")->fallthrough();

  app.add_subcommand("spectrum", "Eigenvalues and the two-family frequency table")
      ->fallthrough();

  int ms_m = 1, ms_index = 1;
  std::string ms_parity = "even";
  CLI::App* modeshape = app.add_subcommand("modeshape", "Export one normalized eigenfunction");
  modeshape->fallthrough();
  modeshape->add_option("-m,--m", ms_m, "x-harmonic index (>= 1)")->required();
  modeshape->add_option("-p,--parity", ms_parity, "even or odd")->required();
  modeshape->add_option("-i,--index", ms_index, "Eigenvalue index within the family (>= 1)");

  std::string load_spec;
  CLI::App* solve = app.add_subcommand("solve", "Static solve under a transversal load");
  solve->fallthrough();
  solve->add_option("--load", load_spec, "uniform:<value> | csv:<path> | mode:<m>")->required();

  std::string initial_spec;
  double ev_t_end = 0;
  int ev_samples = 101, ev_snapshots = 0;
  CLI::App* evolve = app.add_subcommand("evolve", "Free evolution from initial data");
  evolve->fallthrough();
  evolve->add_option("--initial", initial_spec,
                     "coeffs:<r>=<a>,... | vcoeffs:<r>=<a>,... | csv:<u0>[,<v0>]; "
                     "parts may be combined with ';'")
      ->required();
  evolve->add_option("--t-end", ev_t_end, "End time in seconds (default: 5 slowest periods)");
  evolve->add_option("--samples", ev_samples, "Number of sample times (>= 2)");
  evolve->add_option("--snapshots", ev_snapshots, "Evenly spaced field CSVs to write");

  CLI11_PARSE(app, argc, argv);

  return orthoplate::run_command([&]() -> int {
    if (app.got_subcommand("material")) return orthoplate::cmd_material(opt);
    if (app.got_subcommand("spectrum")) return orthoplate::cmd_spectrum(opt);
    if (app.got_subcommand("modeshape")) {
      return orthoplate::cmd_modeshape(opt, ms_m, ms_parity, ms_index);
    }
    if (app.got_subcommand("solve")) return orthoplate::cmd_solve(opt, load_spec);
    return orthoplate::cmd_evolve(opt, initial_spec, ev_t_end, ev_samples, ev_snapshots);
  });
}
