#pragma once

#include <Eigen/Dense>

#include "orthoplate/errors.hpp"

namespace orthoplate {

using Matrix6d = Eigen::Matrix<double, 6, 6>;
using Vector6d = Eigen::Matrix<double, 6, 1>;

/// Component ordering used for all 6-vectors and 6x6 matrices in this library:
///   (11, 22, 33, 12, 13, 23)
/// Strain vectors carry tensor components (e12, not the engineering 2*e12), so the
/// shear block of the compliance matrix is diag(1/(2 mu12), 1/(2 mu13), 1/(2 mu23))
/// and the shear block of the stiffness matrix is diag(2 mu12, 2 mu13, 2 mu23).
struct SymTensor3 {
  Vector6d v = Vector6d::Zero();

  SymTensor3() = default;
  explicit SymTensor3(const Vector6d& coeffs) : v(coeffs) {}

  /// Builds from a 3x3 matrix; requires symmetry to within tol relative to max entry.
  static SymTensor3 from_matrix(const Eigen::Matrix3d& m, double tol = 1e-12);

  /// Full 3x3 symmetric matrix with off-diagonal entries duplicated.
  Eigen::Matrix3d to_matrix() const;

  double& operator()(int i, int j);
  double operator()(int i, int j) const;
};

/// The nine independent constants of an orthotropic material in its principal frame:
/// Young moduli E_i, Poisson ratios nu_ij (contraction along j from load along i),
/// and shear moduli mu_ij.  The three ratios nu21, nu31, nu32 are determined by the
/// reciprocity relations nu_ji / E_j = nu_ij / E_i.
struct OrthotropicConstants {
  double E1 = 0, E2 = 0, E3 = 0;
  double nu12 = 0, nu13 = 0, nu23 = 0;
  double nu21 = 0, nu31 = 0, nu32 = 0;
  double mu12 = 0, mu13 = 0, mu23 = 0;

  /// Fills nu21, nu31, nu32 from the reciprocity relations and returns the result.
  OrthotropicConstants with_reciprocal() const;

  /// Throws ValidationError unless E_i > 0, mu_ij > 0, the reciprocity relations
  /// hold to 1e-12 (relative), and the compliance matrix is positive definite.
  void validate() const;
};

/// The five constants of a transversely isotropic material whose distinguished axis
/// is x1 (the isotropy plane is spanned by x2, x3).
struct TransverselyIsotropicConstants {
  double E1 = 0;    ///< modulus along the distinguished axis
  double E2 = 0;    ///< modulus in the isotropy plane (E3 = E2)
  double nu12 = 0;  ///< contraction in the plane from load along x1
  double nu23 = 0;  ///< Poisson ratio within the isotropy plane
  double mu12 = 0;  ///< shear modulus in planes containing x1 (mu13 = mu12)

  /// Expands to the full nine-constant set: E3 = E2, nu13 = nu12, nu32 = nu23,
  /// mu13 = mu12, the remaining ratios from reciprocity, and mu23 = (C2222 - C2233)/2
  /// so that the expanded material is rotation invariant about x1.  The latter
  /// closed form simplifies to the in-plane isotropic value E2 / (2 (1 + nu23)).
  OrthotropicConstants expand() const;

  /// Throws ValidationError unless E1 >= E2 > 0 (equality admits the isotropic
  /// limit), 0 < nu12 < 1/2, and the expanded constants are admissible.
  void validate() const;
};

/// delta = (1 - nu12 nu21 - nu13 nu31 - nu23 nu32 - 2 nu12 nu23 nu31) / (E1 E2 E3).
/// Equals the determinant of the normal (3x3) block of the compliance matrix.
/// Throws ValidationError when the value is not positive (inadmissible material).
double delta(const OrthotropicConstants& c);

/// 6x6 compliance matrix S mapping stress components to strain components.
/// Throws ValidationError naming the failing identity when the reciprocity
/// relations do not hold (they make S symmetric).
Matrix6d compliance_matrix(const OrthotropicConstants& c);

/// Stiffness obtained by numerically inverting the compliance matrix.
Matrix6d stiffness_from_compliance(const OrthotropicConstants& c);

/// Stiffness assembled entry by entry from the closed-form inverse of the
/// compliance matrix (normal block divided by delta, shear diagonal 2 mu_ij).
Matrix6d stiffness_closed_form(const OrthotropicConstants& c);

/// Stiffness of the transversely isotropic material, assembled from the closed
/// forms specialised to the five constants.  The result is validated to be
/// symmetric positive definite.
Matrix6d reinforced_stiffness(const TransverselyIsotropicConstants& c);

/// |C2323 - (C2222 - C2233 - C3322 + C3333) / 2| / max|C|, the relative defect of
/// the shear modulus identity that characterises transverse isotropy about x1.
/// Zero (to roundoff) for transversely isotropic stiffness matrices.
double c2323_residual(const Matrix6d& C);

/// Orthogonal change of frame A acting on 3-vectors.
struct OrthogonalTransform {
  Eigen::Matrix3d A = Eigen::Matrix3d::Identity();

  /// Throws ValidationError unless A^T A = I to 1e-12.
  void validate() const;

  /// Rotation by theta about the x1 axis.
  static OrthogonalTransform rotation_x1(double theta);
  /// Rotation by theta about the coordinate axis with the given index (0, 1, or 2).
  static OrthogonalTransform rotation_axis(int axis, double theta);
  /// Reflection that flips the axis with the given index (0, 1, or 2).
  static OrthogonalTransform reflection(int axis);
};

/// 6x6 matrix representing the action of A on symmetric tensors in component form:
/// lift(A) coeffs(e) = coeffs(A e A^T).  The map is a homomorphism,
/// lift(A B) = lift(A) lift(B), and lift(A^T) = lift(A)^{-1} for orthogonal A.
Matrix6d lift_transform(const OrthogonalTransform& t);

/// Stiffness in the rotated frame: lift(A) C lift(A)^{-1}.
Matrix6d transform_stiffness(const Matrix6d& C, const OrthogonalTransform& t);

/// Result of the orthotropy pattern test.
struct OrthotropyCheck {
  bool orthotropic = false;
  double residual = 0;  ///< largest off-pattern magnitude relative to the largest entry
};

/// Checks that C has the orthotropic sparsity pattern in the current frame:
/// zero coupling between normal and shear components and a diagonal shear block.
/// Equivalently C commutes with the lifted reflections of the coordinate axes.
OrthotropyCheck is_orthotropic(const Matrix6d& C, double tol = 1e-12);

/// Largest relative defect of invariance of C under rotations about the given
/// coordinate axis, sampled at nsamples angles in (0, pi).  Near zero about x1
/// (axis 0) for transversely isotropic materials, about every axis for isotropic
/// ones.
double rotation_invariance_residual(const Matrix6d& C, int axis = 0, int nsamples = 7);

/// Stress components C coeffs(e).
SymTensor3 stress(const Matrix6d& C, const SymTensor3& e);

/// Elastic energy density (1/2) sum_{ijhk} C_ijhk e_ij e_hk with all 81 terms,
/// evaluated through the 9x9 expansion of C (off-diagonal strain components appear
/// twice).  For symmetric strain this equals (1/2) sigma : e with sigma = stress(C, e).
double energy_density(const Matrix6d& C, const SymTensor3& e);

/// Same 81-term sum evaluated on a possibly nonsymmetric 3x3 array, treating the
/// nine components as independent.  Used to probe the energy gradient component by
/// component; for symmetric input it agrees with energy_density.
double energy_density_tensor(const Matrix6d& C, const Eigen::Matrix3d& e);

}  // namespace orthoplate
