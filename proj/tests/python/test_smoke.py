"""End-to-end smoke checks of the python bindings.

Exercises one representative call from each area (model construction, spectrum
assembly, static solve, energies, modal dynamics, error mapping); the numeric
depth lives in the C++ test suite.
"""

import math
from pathlib import Path

import numpy as np
import pytest

import orthoplate as op

ROOT = Path(__file__).resolve().parents[2]


@pytest.fixture(scope="module")
def model():
    return op.plate_model_from_file(str(ROOT / "tacoma.cfg"))


@pytest.fixture(scope="module")
def spectrum(model):
    return op.assemble_spectrum(model, m_max=3, k_per_mode=2)


def test_model_from_config(model):
    assert model.R == 2.109e7
    assert model.geometry.L == 853.44
    assert model.geometry.ell == 6.0
    assert model.M == 7198.0
    assert model.material.kappa == pytest.approx(123.48132780082987, rel=1e-12)


def test_model_direct_construction_matches(model):
    mat = op.PlateMaterial.derive(2.1e11, 1.687e9, 0.2)
    geom = op.PlateGeometry(L=853.44, ell=6.0)
    direct = op.PlateModel.make(geom, mat, 7198.0, R=2.109e7)
    assert direct.R == model.R
    assert direct.material.Kcal == model.material.Kcal
    assert direct.geometry.d == pytest.approx(model.geometry.d, rel=1e-14)


def test_spectrum_basics(model, spectrum):
    lams = [p.lambda_ for p in spectrum.pairs]
    assert lams == sorted(lams)
    assert spectrum.pairs[0].parity == op.Parity.Even
    assert spectrum.pairs[0].m == 1
    assert spectrum.pairs[0].lambda_ == pytest.approx(0.4818909466279685, rel=1e-9)
    assert spectrum.vertical_hz[0] == pytest.approx(
        op.frequency_hz(spectrum.lambda_vert[0], model.M, model.geometry.ell), rel=1e-14
    )
    # Completeness bound: everything below it is in pairs, which may reach higher.
    assert spectrum.certified_below > max(spectrum.lambda_vert)
    assert spectrum.certified_below > spectrum.lambda_tors[0]
    assert len(spectrum.pairs) == 3 * 2 * 2


def test_static_round_trip(model, spectrum):
    grid = model.default_grid(81, 41)
    p1 = spectrum.pairs[0]
    target = p1.field(grid)
    u, report = op.static_solve(model, p1.lambda_ * target.u, grid, m_max=4)
    scale = np.abs(target.u).max()
    assert np.abs(u.u - target.u).max() <= 1e-6 * scale
    assert report.interior_rel <= 1e-6
    assert report.boundary_rel <= 1e-6


def test_energy_identities(model, spectrum):
    grid = model.default_grid(81, 41)
    field = spectrum.pairs[0].field(grid)
    eb = op.bending_energy(model, field)
    assert op.bending_energy_expanded(model, field) == pytest.approx(eb, rel=1e-12)
    assert op.h2star_inner(model, field, field) == pytest.approx(2.0 * eb / model.R, rel=1e-10)


def test_modal_energy(model, spectrum):
    modes = [spectrum.pairs[0], spectrum.pairs[1]]
    a0 = np.array([1.0, 0.5])
    v0 = np.zeros(2)
    state = op.modal_state(model, modes, a0, v0)
    expected = 0.5 * (modes[0].lambda_ + 0.25 * modes[1].lambda_)
    assert op.conserved_energy(state) == pytest.approx(expected, rel=1e-12)
    kinetic, bending = op.energy_split(state, 0.0)
    assert kinetic == 0.0
    assert bending == pytest.approx(expected, rel=1e-12)
    period = 2.0 * math.pi / modes[0].omega
    kinetic, bending = op.energy_split(state, 0.3 * period)
    assert kinetic + bending == pytest.approx(expected, rel=1e-10)


def test_orthotropy_checks():
    constants = op.TransverselyIsotropicConstants(E1=5.0, E2=1.0, nu12=0.3, nu23=0.25, mu12=0.8)
    C = op.reinforced_stiffness(constants)
    orthotropic, residual = op.is_orthotropic(C)
    assert orthotropic and residual <= 1e-12
    assert op.c2323_residual(C) <= 1e-12
    assert op.rotation_invariance_residual(C, axis=0) <= 1e-10


def test_error_mapping(model):
    assert issubclass(op.ValidationError, ValueError)
    with pytest.raises(ValueError):
        op.PlateMaterial.derive(1.0, 2.0, 0.2)
    with pytest.raises(ValueError):
        op.assemble_spectrum(model, m_max=0)
