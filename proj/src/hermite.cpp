#include "orthoplate/hermite.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>

namespace orthoplate {

namespace {

// 6-point Gauss-Legendre rule on [0, 1].
constexpr int kGaussN = 6;
constexpr double kGaussX[kGaussN] = {0.033765242898423986, 0.169395306766867743,
                                     0.380690406958401546, 0.619309593041598454,
                                     0.830604693233132257, 0.966234757101576014};
constexpr double kGaussW[kGaussN] = {0.085662246189585173, 0.180380786524069304,
                                     0.233956967286345524, 0.233956967286345524,
                                     0.180380786524069304, 0.085662246189585173};

}  // namespace

Eigen::Vector4d hermite_shape(double xi, double h, int deriv) {
  Eigen::Vector4d n;
  switch (deriv) {
    case 0:
      n << 1 - 3 * xi * xi + 2 * xi * xi * xi, h * xi * (1 - xi) * (1 - xi),
          3 * xi * xi - 2 * xi * xi * xi, h * xi * xi * (xi - 1);
      return n;
    case 1:
      n << -6 * xi + 6 * xi * xi, h * (1 - 4 * xi + 3 * xi * xi), 6 * xi - 6 * xi * xi,
          h * (3 * xi * xi - 2 * xi);
      return n / h;
    case 2:
      n << -6 + 12 * xi, h * (-4 + 6 * xi), 6 - 12 * xi, h * (6 * xi - 2);
      return n / (h * h);
    default:
      throw ValidationError(fmt::format("unsupported shape derivative order {}", deriv));
  }
}

HermiteElementMatrices hermite_element_matrices(double h) {
  HermiteElementMatrices m;
  m.K2.setZero();
  m.K1.setZero();
  m.M0.setZero();
  m.G2.setZero();
  for (int q = 0; q < kGaussN; ++q) {
    const double w = kGaussW[q] * h;  // physical quadrature weight
    const Eigen::Vector4d n0 = hermite_shape(kGaussX[q], h, 0);
    const Eigen::Vector4d n1 = hermite_shape(kGaussX[q], h, 1);
    const Eigen::Vector4d n2 = hermite_shape(kGaussX[q], h, 2);
    m.K2 += w * n2 * n2.transpose();
    m.K1 += w * n1 * n1.transpose();
    m.M0 += w * n0 * n0.transpose();
    m.G2 += w * n2 * n0.transpose();
  }
  return m;
}

HermiteAssembly hermite_assemble(double a, double b, int nelem) {
  if (!(b > a) || nelem < 1) {
    throw ValidationError(
        fmt::format("invalid assembly interval [{:g}, {:g}] with {} elements", a, b, nelem));
  }
  HermiteAssembly asmb;
  asmb.a = a;
  asmb.b = b;
  asmb.nelem = nelem;
  asmb.h = (b - a) / nelem;
  const int ndof = asmb.ndof();
  asmb.K2 = Eigen::MatrixXd::Zero(ndof, ndof);
  asmb.K1 = Eigen::MatrixXd::Zero(ndof, ndof);
  asmb.M0 = Eigen::MatrixXd::Zero(ndof, ndof);
  asmb.G2 = Eigen::MatrixXd::Zero(ndof, ndof);
  const HermiteElementMatrices el = hermite_element_matrices(asmb.h);
  for (int e = 0; e < nelem; ++e) {
    const int base = 2 * e;
    asmb.K2.block<4, 4>(base, base) += el.K2;
    asmb.K1.block<4, 4>(base, base) += el.K1;
    asmb.M0.block<4, 4>(base, base) += el.M0;
    asmb.G2.block<4, 4>(base, base) += el.G2;
  }
  return asmb;
}

double HermiteAssembly::evaluate(const Eigen::VectorXd& coeffs, double y, int deriv) const {
  if (coeffs.size() != ndof()) {
    throw ValidationError("coefficient vector does not match the assembly");
  }
  int e = static_cast<int>(std::floor((y - a) / h));
  e = std::clamp(e, 0, nelem - 1);
  const double xi = (y - (a + e * h)) / h;
  const Eigen::Vector4d n = hermite_shape(xi, h, deriv);
  return n.dot(coeffs.segment<4>(2 * e));
}

}  // namespace orthoplate
