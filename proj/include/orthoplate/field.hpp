#pragma once

#include <Eigen/Dense>
#include <map>
#include <vector>

#include "orthoplate/errors.hpp"

namespace orthoplate {

/// Uniform tensor grid on the rectangle [0, L] x [-ell, ell].
/// Both point counts must be odd and at least 5 so that composite Simpson
/// quadrature and centered difference stencils are available.
struct Grid {
  double L = 0;    ///< plate length along x
  double ell = 0;  ///< half width along y
  int nx = 0;      ///< points along x, odd, >= 5
  int ny = 0;      ///< points along y, odd, >= 5

  static Grid make(double L, double ell, int nx = 201, int ny = 41);

  double dx() const { return L / (nx - 1); }
  double dy() const { return 2.0 * ell / (ny - 1); }
  double x(int i) const { return L * i / (nx - 1); }
  double y(int j) const { return -ell + 2.0 * ell * j / (ny - 1); }
};

/// Identifiers for the derivative planes a displacement field can carry.
/// The letters name repeated partial derivatives, e.g. XXY is d^3 u / dx^2 dy.
enum class Deriv { XX, XY, YY, XXY, YYY, XXXX, XXYY, YYYY };

/// Derivative order along x and y for a plane identifier.
std::pair<int, int> deriv_orders(Deriv d);

/// Transverse displacement sampled on a grid, with an optional set of derivative
/// planes.  Planes are (nx, ny) matrices indexed (i, j) for the point (x_i, y_j).
/// Fields synthesised from closed-form modes carry exact derivative planes;
/// ensure_derivatives fills any missing plane by finite differences.
struct DisplacementField {
  Grid grid;
  Eigen::MatrixXd u;
  std::map<Deriv, Eigen::MatrixXd> derivs;

  static DisplacementField zero(const Grid& g);

  bool has(Deriv d) const { return derivs.count(d) != 0; }

  /// Returns the requested plane; throws ValidationError if it was never computed.
  const Eigen::MatrixXd& plane(Deriv d) const;

  /// Fills every missing derivative plane by finite differences of u.
  void ensure_derivatives();
};

/// Composite Simpson weights for n odd equispaced points with spacing h.
std::vector<double> simpson_weights(int n, double h);

/// Tensor Simpson integral of a plane over the grid rectangle.
double integrate(const Eigen::MatrixXd& plane, const Grid& g);

/// Tensor Simpson inner product of two planes over the grid rectangle.
double inner_product(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b, const Grid& g);

/// Finite difference weights for the m-th derivative at point z from the nodes x.
/// Classic divided-difference recursion; exact for polynomials of degree < x.size().
std::vector<double> fd_weights(double z, const std::vector<double>& x, int m);

/// m-th derivative along x of a plane on grid g, second order accurate or better
/// (centered stencils inside, one-sided at the edges).
Eigen::MatrixXd diff_x(const Eigen::MatrixXd& plane, const Grid& g, int m);

/// m-th derivative along y of a plane on grid g.
Eigen::MatrixXd diff_y(const Eigen::MatrixXd& plane, const Grid& g, int m);

}  // namespace orthoplate
