#include "orthoplate/elasticity.hpp"

#include <cmath>
#include <fmt/format.h>

namespace orthoplate {

namespace {

// Position of component (i, j) in the (11, 22, 33, 12, 13, 23) ordering.
int slot(int i, int j) {
  if (i == j) return i;
  const int a = std::min(i, j), b = std::max(i, j);
  if (a == 0) return b == 1 ? 3 : 4;  // 12, 13
  return 5;                           // 23
}

void check_reciprocity(const OrthotropicConstants& c) {
  struct Pair {
    double lhs, rhs;
    const char* name;
  };
  const Pair pairs[3] = {{c.nu21 / c.E2, c.nu12 / c.E1, "nu21/E2 = nu12/E1"},
                         {c.nu31 / c.E3, c.nu13 / c.E1, "nu31/E3 = nu13/E1"},
                         {c.nu32 / c.E3, c.nu23 / c.E2, "nu32/E3 = nu23/E2"}};
  for (const auto& p : pairs) {
    const double scale = std::max({std::abs(p.lhs), std::abs(p.rhs), 1e-300});
    if (std::abs(p.lhs - p.rhs) > 1e-12 * scale) {
      throw ValidationError(fmt::format(
          "Poisson ratios violate the reciprocity relation {} ({:.17g} vs {:.17g})", p.name, p.lhs,
          p.rhs));
    }
  }
}

}  // namespace

SymTensor3 SymTensor3::from_matrix(const Eigen::Matrix3d& m, double tol) {
  const double scale = std::max(m.cwiseAbs().maxCoeff(), 1.0);
  const double asym = (m - m.transpose()).cwiseAbs().maxCoeff();
  if (asym > tol * scale) {
    throw ValidationError(fmt::format(
        "SymTensor3::from_matrix: input is not symmetric (defect {:g}, scale {:g})", asym, scale));
  }
  Vector6d v;
  v << m(0, 0), m(1, 1), m(2, 2), 0.5 * (m(0, 1) + m(1, 0)), 0.5 * (m(0, 2) + m(2, 0)),
      0.5 * (m(1, 2) + m(2, 1));
  return SymTensor3(v);
}

Eigen::Matrix3d SymTensor3::to_matrix() const {
  Eigen::Matrix3d m;
  m << v[0], v[3], v[4], v[3], v[1], v[5], v[4], v[5], v[2];
  return m;
}

double& SymTensor3::operator()(int i, int j) { return v[slot(i, j)]; }

double SymTensor3::operator()(int i, int j) const { return v[slot(i, j)]; }

OrthotropicConstants OrthotropicConstants::with_reciprocal() const {
  OrthotropicConstants c = *this;
  c.nu21 = c.nu12 * c.E2 / c.E1;
  c.nu31 = c.nu13 * c.E3 / c.E1;
  c.nu32 = c.nu23 * c.E3 / c.E2;
  return c;
}

void OrthotropicConstants::validate() const {
  if (!(E1 > 0) || !(E2 > 0) || !(E3 > 0)) {
    throw ValidationError(
        fmt::format("Young moduli must be positive, got E1={:g} E2={:g} E3={:g}", E1, E2, E3));
  }
  if (!(mu12 > 0) || !(mu13 > 0) || !(mu23 > 0)) {
    throw ValidationError(fmt::format(
        "shear moduli must be positive, got mu12={:g} mu13={:g} mu23={:g}", mu12, mu13, mu23));
  }
  const Matrix6d S = compliance_matrix(*this);  // checks reciprocity
  delta(*this);                                 // checks admissibility
  Eigen::LLT<Matrix6d> llt(S);
  if (llt.info() != Eigen::Success) {
    throw ValidationError("compliance matrix is not positive definite");
  }
}

OrthotropicConstants TransverselyIsotropicConstants::expand() const {
  OrthotropicConstants c;
  c.E1 = E1;
  c.E2 = E2;
  c.E3 = E2;
  c.nu12 = nu12;
  c.nu13 = nu12;
  c.nu23 = nu23;
  c.mu12 = mu12;
  c.mu13 = mu12;
  c = c.with_reciprocal();
  // mu23 = (C2222 - C2233) / 2 with C2222, C2233 the closed-form stiffness entries;
  // this forces rotation invariance about x1 and simplifies to E2 / (2 (1 + nu23)).
  const double d = delta(c);
  c.mu23 = (E1 * (1.0 - nu23) - 2.0 * E2 * nu12 * nu12) / (2.0 * d * E1 * E1 * E2);
  return c;
}

void TransverselyIsotropicConstants::validate() const {
  if (!(E1 >= E2) || !(E2 > 0)) {
    throw ValidationError(
        fmt::format("reinforced material requires E1 >= E2 > 0, got E1={:g} E2={:g}", E1, E2));
  }
  if (!(nu12 > 0) || !(nu12 < 0.5)) {
    throw ValidationError(fmt::format("nu12 must lie in (0, 1/2), got {:g}", nu12));
  }
  expand().validate();
}

double delta(const OrthotropicConstants& c) {
  const double d = (1.0 - c.nu12 * c.nu21 - c.nu13 * c.nu31 - c.nu23 * c.nu32 -
                    2.0 * c.nu12 * c.nu23 * c.nu31) /
                   (c.E1 * c.E2 * c.E3);
  if (!(d > 0)) {
    throw ValidationError(fmt::format("material is inadmissible: delta = {:g} <= 0", d));
  }
  return d;
}

Matrix6d compliance_matrix(const OrthotropicConstants& c) {
  check_reciprocity(c);
  Matrix6d S = Matrix6d::Zero();
  S(0, 0) = 1.0 / c.E1;
  S(0, 1) = -c.nu21 / c.E2;
  S(0, 2) = -c.nu31 / c.E3;
  S(1, 0) = -c.nu12 / c.E1;
  S(1, 1) = 1.0 / c.E2;
  S(1, 2) = -c.nu32 / c.E3;
  S(2, 0) = -c.nu13 / c.E1;
  S(2, 1) = -c.nu23 / c.E2;
  S(2, 2) = 1.0 / c.E3;
  S(3, 3) = 1.0 / (2.0 * c.mu12);
  S(4, 4) = 1.0 / (2.0 * c.mu13);
  S(5, 5) = 1.0 / (2.0 * c.mu23);
  return S;
}

Matrix6d stiffness_from_compliance(const OrthotropicConstants& c) {
  return compliance_matrix(c).inverse();
}

Matrix6d stiffness_closed_form(const OrthotropicConstants& c) {
  const double d = delta(c);
  Matrix6d C = Matrix6d::Zero();
  C(0, 0) = (1.0 - c.nu23 * c.nu32) / (d * c.E2 * c.E3);
  C(0, 1) = (c.nu12 + c.nu13 * c.nu32) / (d * c.E1 * c.E3);
  C(0, 2) = (c.nu13 + c.nu12 * c.nu23) / (d * c.E1 * c.E2);
  C(1, 0) = (c.nu21 + c.nu31 * c.nu23) / (d * c.E2 * c.E3);
  C(1, 1) = (1.0 - c.nu13 * c.nu31) / (d * c.E1 * c.E3);
  C(1, 2) = (c.nu23 + c.nu13 * c.nu21) / (d * c.E1 * c.E2);
  C(2, 0) = (c.nu31 + c.nu21 * c.nu32) / (d * c.E2 * c.E3);
  C(2, 1) = (c.nu32 + c.nu31 * c.nu12) / (d * c.E1 * c.E3);
  C(2, 2) = (1.0 - c.nu12 * c.nu21) / (d * c.E1 * c.E2);
  C(3, 3) = 2.0 * c.mu12;
  C(4, 4) = 2.0 * c.mu13;
  C(5, 5) = 2.0 * c.mu23;
  return C;
}

Matrix6d reinforced_stiffness(const TransverselyIsotropicConstants& tic) {
  tic.validate();
  const double E1 = tic.E1, E2 = tic.E2, nu12 = tic.nu12, nu23 = tic.nu23, mu12 = tic.mu12;
  const OrthotropicConstants full = tic.expand();
  const double d = delta(full);
  Matrix6d C = Matrix6d::Zero();
  C(0, 0) = (1.0 - nu23 * nu23) / (d * E2 * E2);
  C(0, 1) = C(0, 2) = nu12 * (1.0 + nu23) / (d * E1 * E2);
  C(1, 0) = C(2, 0) = C(0, 1);
  C(1, 1) = C(2, 2) = (E1 - E2 * nu12 * nu12) / (d * E1 * E1 * E2);
  C(1, 2) = C(2, 1) = (E1 * nu23 + E2 * nu12 * nu12) / (d * E1 * E1 * E2);
  C(3, 3) = C(4, 4) = 2.0 * mu12;
  C(5, 5) = (E1 * (1.0 - nu23) - 2.0 * E2 * nu12 * nu12) / (d * E1 * E1 * E2);
  Eigen::LLT<Matrix6d> llt(C);
  if (llt.info() != Eigen::Success) {
    throw ValidationError("reinforced stiffness matrix is not positive definite");
  }
  return C;
}

double c2323_residual(const Matrix6d& C) {
  const double scale = std::max(C.cwiseAbs().maxCoeff(), 1e-300);
  return std::abs(C(5, 5) - 0.5 * (C(1, 1) - C(1, 2) - C(2, 1) + C(2, 2))) / scale;
}

void OrthogonalTransform::validate() const {
  const double defect = (A.transpose() * A - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff();
  if (defect > 1e-12) {
    throw ValidationError(fmt::format("matrix is not orthogonal (defect {:g})", defect));
  }
}

OrthogonalTransform OrthogonalTransform::rotation_x1(double theta) {
  return rotation_axis(0, theta);
}

OrthogonalTransform OrthogonalTransform::rotation_axis(int axis, double theta) {
  if (axis < 0 || axis > 2) {
    throw ValidationError(fmt::format("rotation axis must be 0, 1, or 2, got {}", axis));
  }
  OrthogonalTransform t;
  const double c = std::cos(theta), s = std::sin(theta);
  const int i = (axis + 1) % 3, j = (axis + 2) % 3;
  t.A = Eigen::Matrix3d::Identity();
  t.A(i, i) = c;
  t.A(i, j) = -s;
  t.A(j, i) = s;
  t.A(j, j) = c;
  return t;
}

OrthogonalTransform OrthogonalTransform::reflection(int axis) {
  if (axis < 0 || axis > 2) {
    throw ValidationError(fmt::format("reflection axis must be 0, 1, or 2, got {}", axis));
  }
  OrthogonalTransform t;
  t.A(axis, axis) = -1.0;
  return t;
}

Matrix6d lift_transform(const OrthogonalTransform& t) {
  const Eigen::Matrix3d& A = t.A;
  Matrix6d L;
  // Rows for the diagonal components (ii): squares and doubled products of row i of A.
  for (int i = 0; i < 3; ++i) {
    L(i, 0) = A(i, 0) * A(i, 0);
    L(i, 1) = A(i, 1) * A(i, 1);
    L(i, 2) = A(i, 2) * A(i, 2);
    L(i, 3) = 2.0 * A(i, 0) * A(i, 1);
    L(i, 4) = 2.0 * A(i, 0) * A(i, 2);
    L(i, 5) = 2.0 * A(i, 1) * A(i, 2);
  }
  // Rows for the off-diagonal components (ij): bilinear products of rows i and j.
  const int rows[3][2] = {{0, 1}, {0, 2}, {1, 2}};
  for (int r = 0; r < 3; ++r) {
    const int i = rows[r][0], j = rows[r][1];
    L(3 + r, 0) = A(i, 0) * A(j, 0);
    L(3 + r, 1) = A(i, 1) * A(j, 1);
    L(3 + r, 2) = A(i, 2) * A(j, 2);
    L(3 + r, 3) = A(i, 0) * A(j, 1) + A(i, 1) * A(j, 0);
    L(3 + r, 4) = A(i, 0) * A(j, 2) + A(i, 2) * A(j, 0);
    L(3 + r, 5) = A(i, 1) * A(j, 2) + A(i, 2) * A(j, 1);
  }
  return L;
}

Matrix6d transform_stiffness(const Matrix6d& C, const OrthogonalTransform& t) {
  t.validate();
  // For orthogonal A the inverse lift is the lift of the transpose.
  OrthogonalTransform ti;
  ti.A = t.A.transpose();
  return lift_transform(t) * C * lift_transform(ti);
}

OrthotropyCheck is_orthotropic(const Matrix6d& C, double tol) {
  const double scale = std::max(C.cwiseAbs().maxCoeff(), 1e-300);
  double off = 0;
  for (int i = 0; i < 6; ++i) {
    for (int j = 0; j < 6; ++j) {
      const bool normal_block = i < 3 && j < 3;
      const bool shear_diag = i >= 3 && i == j;
      if (!normal_block && !shear_diag) off = std::max(off, std::abs(C(i, j)));
    }
  }
  OrthotropyCheck r;
  r.residual = off / scale;
  r.orthotropic = r.residual <= tol;
  return r;
}

double rotation_invariance_residual(const Matrix6d& C, int axis, int nsamples) {
  const double scale = std::max(C.cwiseAbs().maxCoeff(), 1e-300);
  double worst = 0;
  for (int k = 1; k <= nsamples; ++k) {
    const double theta = M_PI * k / (nsamples + 1.0);
    const Matrix6d Ct = transform_stiffness(C, OrthogonalTransform::rotation_axis(axis, theta));
    worst = std::max(worst, (Ct - C).cwiseAbs().maxCoeff() / scale);
  }
  return worst;
}

SymTensor3 stress(const Matrix6d& C, const SymTensor3& e) { return SymTensor3(C * e.v); }

double energy_density_tensor(const Matrix6d& C, const Eigen::Matrix3d& e) {
  // Nine-component expansion in the order (11, 22, 33, 12, 13, 23, 21, 31, 32).
  // A matrix column for an off-diagonal pair acts on tensor components summed
  // over both index orders, so the tensor entry behind a shear column is half
  // the matrix entry; all 81 index pairs then contribute.
  const int idx[9][2] = {{0, 0}, {1, 1}, {2, 2}, {0, 1}, {0, 2}, {1, 2}, {1, 0}, {2, 0}, {2, 1}};
  double acc = 0;
  for (int p = 0; p < 9; ++p) {
    for (int q = 0; q < 9; ++q) {
      const double column_weight = idx[q][0] == idx[q][1] ? 1.0 : 0.5;
      acc += column_weight * C(slot(idx[p][0], idx[p][1]), slot(idx[q][0], idx[q][1])) *
             e(idx[p][0], idx[p][1]) * e(idx[q][0], idx[q][1]);
    }
  }
  return 0.5 * acc;
}

double energy_density(const Matrix6d& C, const SymTensor3& e) {
  return energy_density_tensor(C, e.to_matrix());
}

}  // namespace orthoplate
