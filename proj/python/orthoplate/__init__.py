"""Orthotropic Kirchhoff-Love plate model.

Thin Python veneer over the C++ core: orthotropic elasticity tensors, the
partially clamped rectangular plate model, its vibration spectrum split into
vertical (even) and torsional (odd) families, static solves, and closed-form
modal evolution.
"""

from ._core import (
    Deriv,
    DisplacementField,
    EigenPair,
    EnergyCoefficients,
    Grid,
    ModalState,
    ModeProblem,
    NumericalError,
    OrthotropicConstants,
    Parity,
    PlateGeometry,
    PlateMaterial,
    PlateModel,
    Spectrum,
    StaticReport,
    TransverselyIsotropicConstants,
    ValidationError,
    assemble_spectrum,
    bending_energy,
    bending_energy_expanded,
    c2323_residual,
    coefficients_at,
    compliance_matrix,
    conserved_energy,
    delta,
    discretization_oracle,
    energy_coefficients,
    energy_density,
    energy_split,
    evolve,
    frequency_hz,
    h2star_inner,
    is_orthotropic,
    modal_state,
    mode_determinant,
    plate_model_from_file,
    project_initial,
    reinforced_stiffness,
    relative_boundary_residual,
    relative_interior_residual,
    rotation_invariance_residual,
    solve_mode_eigs,
    static_solve,
    stiffness_closed_form,
    stiffness_from_compliance,
    stress,
    total_energy,
    velocities_at,
)

__all__ = [
    "Deriv",
    "DisplacementField",
    "EigenPair",
    "EnergyCoefficients",
    "Grid",
    "ModalState",
    "ModeProblem",
    "NumericalError",
    "OrthotropicConstants",
    "Parity",
    "PlateGeometry",
    "PlateMaterial",
    "PlateModel",
    "Spectrum",
    "StaticReport",
    "TransverselyIsotropicConstants",
    "ValidationError",
    "assemble_spectrum",
    "bending_energy",
    "bending_energy_expanded",
    "c2323_residual",
    "coefficients_at",
    "compliance_matrix",
    "conserved_energy",
    "delta",
    "discretization_oracle",
    "energy_coefficients",
    "energy_density",
    "energy_split",
    "evolve",
    "frequency_hz",
    "h2star_inner",
    "is_orthotropic",
    "modal_state",
    "mode_determinant",
    "plate_model_from_file",
    "project_initial",
    "reinforced_stiffness",
    "relative_boundary_residual",
    "relative_interior_residual",
    "rotation_invariance_residual",
    "solve_mode_eigs",
    "static_solve",
    "stiffness_closed_form",
    "stiffness_from_compliance",
    "stress",
    "total_energy",
    "velocities_at",
]
