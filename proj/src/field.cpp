#include "orthoplate/field.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>

namespace orthoplate {

Grid Grid::make(double L, double ell, int nx, int ny) {
  if (!(L > 0) || !(ell > 0)) {
    throw ValidationError(fmt::format("grid extents must be positive, got L={:g} ell={:g}", L, ell));
  }
  if (nx < 5 || ny < 5 || nx % 2 == 0 || ny % 2 == 0) {
    throw ValidationError(
        fmt::format("grid sizes must be odd and at least 5, got nx={} ny={}", nx, ny));
  }
  Grid g;
  g.L = L;
  g.ell = ell;
  g.nx = nx;
  g.ny = ny;
  return g;
}

std::pair<int, int> deriv_orders(Deriv d) {
  switch (d) {
    case Deriv::XX: return {2, 0};
    case Deriv::XY: return {1, 1};
    case Deriv::YY: return {0, 2};
    case Deriv::XXY: return {2, 1};
    case Deriv::YYY: return {0, 3};
    case Deriv::XXXX: return {4, 0};
    case Deriv::XXYY: return {2, 2};
    case Deriv::YYYY: return {0, 4};
  }
  throw ValidationError("unknown derivative plane identifier");
}

DisplacementField DisplacementField::zero(const Grid& g) {
  DisplacementField f;
  f.grid = g;
  f.u = Eigen::MatrixXd::Zero(g.nx, g.ny);
  return f;
}

const Eigen::MatrixXd& DisplacementField::plane(Deriv d) const {
  auto it = derivs.find(d);
  if (it == derivs.end()) {
    throw ValidationError("requested derivative plane is not available; call ensure_derivatives");
  }
  return it->second;
}

void DisplacementField::ensure_derivatives() {
  for (Deriv d : {Deriv::XX, Deriv::XY, Deriv::YY, Deriv::XXY, Deriv::YYY, Deriv::XXXX,
                  Deriv::XXYY, Deriv::YYYY}) {
    if (has(d)) continue;
    const auto [mx, my] = deriv_orders(d);
    Eigen::MatrixXd p = u;
    if (mx > 0) p = diff_x(p, grid, mx);
    if (my > 0) p = diff_y(p, grid, my);
    derivs[d] = std::move(p);
  }
}

std::vector<double> simpson_weights(int n, double h) {
  if (n < 3 || n % 2 == 0) {
    throw ValidationError(fmt::format("Simpson rule needs an odd point count >= 3, got {}", n));
  }
  std::vector<double> w(n, h / 3.0);
  for (int i = 1; i + 1 < n; ++i) w[i] *= (i % 2 == 1) ? 4.0 : 2.0;
  return w;
}

double integrate(const Eigen::MatrixXd& plane, const Grid& g) {
  return inner_product(plane, Eigen::MatrixXd::Ones(g.nx, g.ny), g);
}

double inner_product(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b, const Grid& g) {
  if (a.rows() != g.nx || a.cols() != g.ny || b.rows() != g.nx || b.cols() != g.ny) {
    throw ValidationError("plane dimensions do not match the grid");
  }
  const auto wx = simpson_weights(g.nx, g.dx());
  const auto wy = simpson_weights(g.ny, g.dy());
  double acc = 0;
  for (int i = 0; i < g.nx; ++i) {
    double row = 0;
    for (int j = 0; j < g.ny; ++j) row += wy[j] * a(i, j) * b(i, j);
    acc += wx[i] * row;
  }
  return acc;
}

std::vector<double> fd_weights(double z, const std::vector<double>& x, int m) {
  const int n = static_cast<int>(x.size());
  if (n <= m) {
    throw ValidationError(
        fmt::format("need more than {} nodes for the derivative of order {}", m, m));
  }
  // Fornberg's recursion: column m of C holds the weights of the m-th derivative.
  Eigen::MatrixXd C = Eigen::MatrixXd::Zero(n, m + 1);
  C(0, 0) = 1.0;
  double c1 = 1.0;
  double c4 = x[0] - z;
  for (int i = 1; i < n; ++i) {
    const int mn = std::min(i, m);
    double c2 = 1.0;
    const double c5 = c4;
    c4 = x[i] - z;
    for (int j = 0; j < i; ++j) {
      const double c3 = x[i] - x[j];
      c2 *= c3;
      if (j == i - 1) {
        for (int k = mn; k >= 1; --k) C(i, k) = c1 * (k * C(i - 1, k - 1) - c5 * C(i - 1, k)) / c2;
        C(i, 0) = -c1 * c5 * C(i - 1, 0) / c2;
      }
      for (int k = mn; k >= 1; --k) C(j, k) = (c4 * C(j, k) - k * C(j, k - 1)) / c3;
      C(j, 0) = c4 * C(j, 0) / c3;
    }
    c1 = c2;
  }
  std::vector<double> w(n);
  for (int i = 0; i < n; ++i) w[i] = C(i, m);
  return w;
}

namespace {

// Applies the m-th derivative along a line of n equispaced samples with spacing h.
// Stencil of m + 3 points, shifted near the ends: second order one-sided, higher
// in the interior.
void diff_line(const double* in, double* out, int n, double h, int m) {
  const int npts = std::min(m + 3, n);
  for (int c = 0; c < n; ++c) {
    int start = std::clamp(c - npts / 2, 0, n - npts);
    std::vector<double> nodes(npts);
    for (int k = 0; k < npts; ++k) nodes[k] = (start + k - c) * h;
    const auto w = fd_weights(0.0, nodes, m);
    double acc = 0;
    for (int k = 0; k < npts; ++k) acc += w[k] * in[start + k];
    out[c] = acc;
  }
}

}  // namespace

Eigen::MatrixXd diff_x(const Eigen::MatrixXd& plane, const Grid& g, int m) {
  Eigen::MatrixXd out(g.nx, g.ny);
  std::vector<double> in(g.nx), der(g.nx);
  for (int j = 0; j < g.ny; ++j) {
    for (int i = 0; i < g.nx; ++i) in[i] = plane(i, j);
    diff_line(in.data(), der.data(), g.nx, g.dx(), m);
    for (int i = 0; i < g.nx; ++i) out(i, j) = der[i];
  }
  return out;
}

Eigen::MatrixXd diff_y(const Eigen::MatrixXd& plane, const Grid& g, int m) {
  Eigen::MatrixXd out(g.nx, g.ny);
  std::vector<double> in(g.ny), der(g.ny);
  for (int i = 0; i < g.nx; ++i) {
    for (int j = 0; j < g.ny; ++j) in[j] = plane(i, j);
    diff_line(in.data(), der.data(), g.ny, g.dy(), m);
    for (int j = 0; j < g.ny; ++j) out(i, j) = der[j];
  }
  return out;
}

}  // namespace orthoplate
