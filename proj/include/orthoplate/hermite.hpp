#pragma once

#include <Eigen/Dense>

#include "orthoplate/errors.hpp"

namespace orthoplate {

/// Cubic Hermite (C1) element matrices on an interval of length h.
/// Degrees of freedom per element: (value, slope) at the left node, then at the
/// right node.  All integrals are evaluated with 6-point Gauss quadrature, which
/// is exact for the polynomial integrands involved.
struct HermiteElementMatrices {
  Eigen::Matrix4d K2;  ///< Int N'' N''^T
  Eigen::Matrix4d K1;  ///< Int N'  N'^T
  Eigen::Matrix4d M0;  ///< Int N   N^T
  Eigen::Matrix4d G2;  ///< Int N'' N^T
};

HermiteElementMatrices hermite_element_matrices(double h);

/// Shape-function values (deriv = 0), slopes (1), or curvatures (2) at local
/// coordinate xi in [0, 1] of an element of length h, in physical units.
Eigen::Vector4d hermite_shape(double xi, double h, int deriv);

/// Assembled global matrices for n equal elements on [a, b], with 2 (n + 1)
/// degrees of freedom ordered (value_0, slope_0, value_1, slope_1, ...).
struct HermiteAssembly {
  double a = 0, b = 0, h = 0;
  int nelem = 0;
  Eigen::MatrixXd K2, K1, M0, G2;

  int ndof() const { return 2 * (nelem + 1); }

  /// Value (deriv = 0) or derivative (1, 2) of the piecewise-cubic function with
  /// the given coefficient vector at point y in [a, b].
  double evaluate(const Eigen::VectorXd& coeffs, double y, int deriv) const;
};

HermiteAssembly hermite_assemble(double a, double b, int nelem);

}  // namespace orthoplate
