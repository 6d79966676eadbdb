#include "orthoplate/csv.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <fmt/format.h>
#include <fmt/os.h>

#include "orthoplate/errors.hpp"

namespace orthoplate {

std::string format_full(double v) { return fmt::format("{:.17g}", v); }

namespace {

fmt::ostream open_out(const std::string& path) {
  try {
    return fmt::output_file(path);
  } catch (const std::system_error&) {
    throw ValidationError(fmt::format("cannot open '{}' for writing", path));
  }
}

}  // namespace

void write_field_csv(const std::string& path, const DisplacementField& field) {
  auto out = open_out(path);
  out.print("x,y,u\n");
  const Grid& g = field.grid;
  for (int i = 0; i < g.nx; ++i) {
    for (int j = 0; j < g.ny; ++j) {
      out.print("{},{},{}\n", format_full(g.x(i)), format_full(g.y(j)),
                format_full(field.u(i, j)));
    }
  }
}

Eigen::MatrixXd read_field_csv(const std::string& path, const Grid& grid) {
  std::ifstream in(path);
  if (!in) throw ValidationError(fmt::format("cannot open field CSV '{}'", path));
  std::string line;
  if (!std::getline(in, line) || line.rfind("x,y,u", 0) != 0) {
    throw ValidationError(fmt::format("{}: expected header 'x,y,u'", path));
  }
  Eigen::MatrixXd u(grid.nx, grid.ny);
  int row = 0;
  const auto coord_tol = [](double v) { return 1e-9 * std::max(1.0, std::abs(v)); };
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    double x, y, v;
    char c1, c2;
    if (!(ls >> x >> c1 >> y >> c2 >> v) || c1 != ',' || c2 != ',') {
      throw ValidationError(fmt::format("{}: malformed row {}: '{}'", path, row + 2, line));
    }
    const int i = row / grid.ny;
    const int j = row % grid.ny;
    if (i >= grid.nx) {
      throw ValidationError(
          fmt::format("{}: more rows than the {} x {} grid", path, grid.nx, grid.ny));
    }
    if (std::abs(x - grid.x(i)) > coord_tol(grid.x(i)) ||
        std::abs(y - grid.y(j)) > coord_tol(grid.y(j))) {
      throw ValidationError(
          fmt::format("{}: row {} coordinates ({}, {}) do not match the grid node ({}, {})",
                      path, row + 2, x, y, grid.x(i), grid.y(j)));
    }
    u(i, j) = v;
    ++row;
  }
  if (row != grid.nx * grid.ny) {
    throw ValidationError(fmt::format("{}: got {} rows, expected {} for the {} x {} grid",
                                      path, row, grid.nx * grid.ny, grid.nx, grid.ny));
  }
  return u;
}

void write_spectrum_csv(const std::string& path, const Spectrum& spectrum) {
  auto out = open_out(path);
  out.print("rank,m,parity,lambda_N_per_m3,frequency_hz\n");
  int rank = 1;
  for (const EigenPair& p : spectrum.pairs) {
    out.print("{},{},{},{},{}\n", rank++, p.m, parity_name(p.parity), format_full(p.lambda),
              format_full(p.nu_hz));
  }
}

void write_eigenfunction_csv(const std::string& path, const EigenPair& pair,
                             const Eigen::VectorXd& ys) {
  auto out = open_out(path);
  out.print("y,Y\n");
  const std::vector<double> ysv(ys.data(), ys.data() + ys.size());
  const Eigen::VectorXd vals = pair.sample_y(ysv);
  for (Eigen::Index i = 0; i < ys.size(); ++i) {
    out.print("{},{}\n", format_full(ys[i]), format_full(vals[i]));
  }
}

void write_trajectory_csv(const std::string& path, const std::vector<double>& times,
                          const Eigen::MatrixXd& coeffs) {
  if (static_cast<Eigen::Index>(times.size()) != coeffs.rows()) {
    throw ValidationError("trajectory: time and coefficient row counts differ");
  }
  auto out = open_out(path);
  out.print("t");
  for (Eigen::Index k = 0; k < coeffs.cols(); ++k) out.print(",a_{}", k + 1);
  out.print("\n");
  for (Eigen::Index r = 0; r < coeffs.rows(); ++r) {
    out.print("{}", format_full(times[static_cast<size_t>(r)]));
    for (Eigen::Index k = 0; k < coeffs.cols(); ++k) {
      out.print(",{}", format_full(coeffs(r, k)));
    }
    out.print("\n");
  }
}

}  // namespace orthoplate
