#pragma once

#include <string>
#include <vector>

#include "orthoplate/field.hpp"
#include "orthoplate/spectral.hpp"

namespace orthoplate {

/// All writers emit full double precision (%.17g) so outputs round-trip exactly
/// and repeated runs are byte-identical.

/// Field CSV: header "x,y,u", one row per node, row-major with y varying fastest.
void write_field_csv(const std::string& path, const DisplacementField& field);

/// Reads a field CSV written by write_field_csv back onto an expected grid;
/// throws ValidationError if the node count or coordinates disagree.
Eigen::MatrixXd read_field_csv(const std::string& path, const Grid& grid);

/// Spectrum CSV: header "rank,m,parity,lambda_N_per_m3,frequency_hz", one row per
/// eigenvalue in ascending order.
void write_spectrum_csv(const std::string& path, const Spectrum& spectrum);

/// Eigenfunction profile CSV: header "y,Y", sampled at the given ordinates.
void write_eigenfunction_csv(const std::string& path, const EigenPair& pair,
                             const Eigen::VectorXd& ys);

/// Trajectory CSV: header "t,a_1,...,a_K", one row per sample time.
void write_trajectory_csv(const std::string& path, const std::vector<double>& times,
                          const Eigen::MatrixXd& coeffs);

/// Formats a double at full precision.
std::string format_full(double v);

}  // namespace orthoplate
