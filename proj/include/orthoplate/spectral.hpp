#pragma once

#include <complex>
#include <vector>

#include "orthoplate/plate.hpp"

namespace orthoplate {

/// Symmetry class of a y-profile: Even profiles describe vertical oscillation
/// modes, Odd profiles torsional ones.
enum class Parity { Even, Odd };

const char* parity_name(Parity p);

/// Result of separating u = sin(mu x) Y(y): the fourth-order eigenproblem
///   R (Y'''' - 2 mu^2 Y'' + (1 + kappa) mu^4 Y) = lambda Y   on (-ell, ell)
/// with the free-edge conditions at y = +-ell
///   Y'' - nu mu^2 Y = 0,   Y''' - (2 - nu) mu^2 Y' = 0.
struct ModeProblem {
  int m = 0;
  double mu = 0;  ///< m pi / L
  double R = 0, kappa = 0, nu = 0, ell = 0, L = 0, M = 0;

  /// Extracts the mode-m problem from a plate model; requires m >= 1.
  static ModeProblem reduce(const PlateModel& model, int m);
};

/// Sign structure of the two s = t^2 roots of the characteristic polynomial
/// t^4 - 2 mu^2 t^2 + (1 + kappa) mu^4 - lambda / R.
enum class RootRegime {
  ComplexPair,   ///< lambda/R < kappa mu^4: complex-conjugate pair
  TwoPositive,   ///< kappa mu^4 < lambda/R < (1+kappa) mu^4: two positive roots
  MixedSign,     ///< lambda/R > (1+kappa) mu^4: one positive, one negative root
  DegenerateLower,  ///< lambda/R = kappa mu^4: double root s = mu^2
  DegenerateUpper,  ///< lambda/R = (1+kappa) mu^4: one root s = 0
};

struct CharacteristicRoots {
  std::complex<double> s1, s2;  ///< s = mu^2 +- sqrt(lambda/R - kappa mu^4)
  RootRegime regime = RootRegime::ComplexPair;
  bool degenerate = false;
};

/// Classifies lambda and returns both characteristic roots (in s = t^2).
CharacteristicRoots characteristic_structure(const ModeProblem& mode, double lambda);

/// Closed-form y-profile: real part of a combination of the two parity-respecting
/// fundamental solutions cosh(sqrt(s) y) (Even) or sinh(sqrt(s) y)/sqrt(s) (Odd).
/// Evaluation is overflow-safe (each basis function is normalized by its magnitude
/// at y = ell) and supports derivatives up to order four.
class ModeShape {
 public:
  ModeShape() = default;
  ModeShape(Parity parity, double ell, std::complex<double> s1, std::complex<double> s2,
            std::complex<double> c1, std::complex<double> c2);

  /// Y^(deriv)(y) for deriv in 0..4.
  double operator()(double y, int deriv = 0) const;

  Parity parity() const { return parity_; }
  double ell() const { return ell_; }

  /// Multiplies the profile by a real factor (used for normalization and sign).
  void scale(double factor);

 private:
  Parity parity_ = Parity::Even;
  double ell_ = 0;
  std::complex<double> s1_{0, 0}, s2_{0, 0}, c1_{0, 0}, c2_{0, 0};
};

/// One eigenvalue of the plate with its separated eigenfunction
/// U(x, y) = sin(mu x) Y(y), normalized to unit L^2(Omega) norm with Y(ell) > 0.
struct EigenPair {
  double lambda = 0;  ///< N/m^3
  int m = 0;
  Parity parity = Parity::Even;
  double mu = 0;
  double nu_hz = 0;  ///< (1/pi) sqrt(ell lambda / (2M))
  double omega = 0;  ///< 2 pi nu_hz
  ModeShape shape;
  double rayleigh_residual = 0;  ///< relative defect of lambda against the energy quotient

  /// Samples Y at the given ordinates.
  Eigen::VectorXd sample_y(const std::vector<double>& ys, int deriv = 0) const;

  /// The 2D eigenfunction on a grid, with exact derivative planes.
  DisplacementField field(const Grid& grid) const;
};

/// Value of the 2x2 free-edge boundary determinant for the parity-respecting
/// fundamental system at this lambda.  Zeros in lambda are the eigenvalues.
/// The returned value is the determinant divided by (s1 - s2) and by the basis
/// overflow scaling, which keeps it real, continuous across root-regime changes,
/// and finite; near-degenerate lambda are evaluated by the analytic limit.
double mode_determinant(const ModeProblem& mode, Parity parity, double lambda);

/// First k eigenvalues (ascending) of the mode problem with eigenfunctions.
/// Brackets come from a geometric scan refined inside the narrow two-positive-root
/// band; roots are polished by a bisection/secant hybrid to 1e-12 relative width.
/// Throws NumericalError naming the scan ceiling if fewer than k roots exist below it.
std::vector<EigenPair> solve_mode_eigs(const ModeProblem& mode, Parity parity, int k);

/// Independent variational approximation: the lowest eigenvalues of the same mode
/// problem from a C1 cubic Hermite discretization of the energy quadratic form on
/// [0, ell] with the parity condition at y = 0 (Even: Y'(0) = 0; Odd: Y(0) = 0).
/// The free-edge conditions are natural for this form.  n >= 50 elements required.
/// Returned values are energy-quotient evaluations of the discrete eigenfunctions,
/// which keeps them accurate for eigenvalues far below the form's norm scale.
std::vector<double> discretization_oracle(const ModeProblem& mode, Parity parity, int n);

/// Assembled global spectrum over x-modes 1..m_max, both parities.
struct Spectrum {
  std::vector<EigenPair> pairs;      ///< globally sorted ascending by lambda
  std::vector<double> lambda_vert;   ///< lowest Even eigenvalue per m (index m-1)
  std::vector<double> lambda_tors;   ///< lowest Odd eigenvalue per m
  std::vector<double> vert_hz;
  std::vector<double> tors_hz;
  double certified_below = 0;  ///< every eigenvalue below this bound is in `pairs`
  int m_max = 0;
  int k_per_mode = 0;
};

/// Solves all (m, parity) mode problems and merges the results.  certified_below
/// combines the first discarded bracket of every scan with the rigorous lower
/// bound R (kappa + 1 - nu) mu^4 for modes beyond m_max.
Spectrum assemble_spectrum(const PlateModel& model, int m_max = 12, int k_per_mode = 4);

/// Frequency of a single eigenvalue (Hz).
double frequency_hz(double lambda, double M, double ell);

struct FrequencyTables {
  std::vector<double> vertical_hz;
  std::vector<double> torsional_hz;
};

/// Per-family frequency tables of a spectrum.
FrequencyTables frequencies(const Spectrum& spectrum, double M, double ell);

/// Superposition sum_k coeffs[k] sin(mu_k x) Y_k(y) sampled on a grid, carrying
/// exact derivative planes.
DisplacementField synthesize_modal(const std::vector<const EigenPair*>& modes,
                                   const std::vector<double>& coeffs, const Grid& grid);

/// Diagnostics of a static solve.
struct StaticReport {
  double truncation_rel = 0;  ///< ||f - f_repr|| / ||f|| on the grid (L2)
  double interior_rel = 0;    ///< equilibrium residual against the represented load
  double boundary_rel = 0;
  double bending_energy = 0;
  double total_energy = 0;  ///< against the supplied load
  int m_max = 0;
};

/// Solves R (Lap^2 u + kappa u_xxxx) = f with hinged x-edges and free y-edges by
/// sine expansion in x and, per mode, an exact particular solution (convolution
/// with the fundamental kernel of the reduced ODE) plus a homogeneous correction
/// fitted to the free-edge conditions.  The residual against the represented load
/// is at roundoff level; the sine-truncation error is reported separately.
DisplacementField static_solve(const PlateModel& model, const Eigen::MatrixXd& f, const Grid& grid,
                               int m_max, StaticReport* report = nullptr);

}  // namespace orthoplate
