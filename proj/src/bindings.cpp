#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "orthoplate/config.hpp"
#include "orthoplate/dynamics.hpp"
#include "orthoplate/elasticity.hpp"
#include "orthoplate/errors.hpp"
#include "orthoplate/field.hpp"
#include "orthoplate/plate.hpp"
#include "orthoplate/spectral.hpp"

namespace py = pybind11;
using namespace orthoplate;

PYBIND11_MODULE(_core, m) {
  m.doc() = "Orthotropic Kirchhoff-Love plate model: elasticity, spectra, statics, dynamics";

  py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
  py::register_exception<NumericalError>(m, "NumericalError", PyExc_RuntimeError);

  // ---- elasticity ----------------------------------------------------------
  py::class_<OrthotropicConstants>(m, "OrthotropicConstants")
      .def(py::init<>())
      .def_readwrite("E1", &OrthotropicConstants::E1)
      .def_readwrite("E2", &OrthotropicConstants::E2)
      .def_readwrite("E3", &OrthotropicConstants::E3)
      .def_readwrite("nu12", &OrthotropicConstants::nu12)
      .def_readwrite("nu13", &OrthotropicConstants::nu13)
      .def_readwrite("nu23", &OrthotropicConstants::nu23)
      .def_readwrite("nu21", &OrthotropicConstants::nu21)
      .def_readwrite("nu31", &OrthotropicConstants::nu31)
      .def_readwrite("nu32", &OrthotropicConstants::nu32)
      .def_readwrite("mu12", &OrthotropicConstants::mu12)
      .def_readwrite("mu13", &OrthotropicConstants::mu13)
      .def_readwrite("mu23", &OrthotropicConstants::mu23)
      .def("with_reciprocal", &OrthotropicConstants::with_reciprocal)
      .def("validate", &OrthotropicConstants::validate);

  py::class_<TransverselyIsotropicConstants>(m, "TransverselyIsotropicConstants")
      .def(py::init([](double E1, double E2, double nu12, double nu23, double mu12) {
             TransverselyIsotropicConstants c;
             c.E1 = E1;
             c.E2 = E2;
             c.nu12 = nu12;
             c.nu23 = nu23;
             c.mu12 = mu12;
             return c;
           }),
           py::arg("E1"), py::arg("E2"), py::arg("nu12"), py::arg("nu23"), py::arg("mu12"))
      .def_readwrite("E1", &TransverselyIsotropicConstants::E1)
      .def_readwrite("E2", &TransverselyIsotropicConstants::E2)
      .def_readwrite("nu12", &TransverselyIsotropicConstants::nu12)
      .def_readwrite("nu23", &TransverselyIsotropicConstants::nu23)
      .def_readwrite("mu12", &TransverselyIsotropicConstants::mu12)
      .def("expand", &TransverselyIsotropicConstants::expand)
      .def("validate", &TransverselyIsotropicConstants::validate);

  m.def("delta", &delta, py::arg("constants"));
  m.def("compliance_matrix", &compliance_matrix, py::arg("constants"));
  m.def("stiffness_closed_form", &stiffness_closed_form, py::arg("constants"));
  m.def("stiffness_from_compliance", &stiffness_from_compliance, py::arg("constants"));
  m.def("reinforced_stiffness", &reinforced_stiffness, py::arg("constants"));
  m.def("c2323_residual", &c2323_residual, py::arg("C"));
  m.def(
      "rotation_invariance_residual",
      [](const Matrix6d& C, int axis, int nsamples) {
        return rotation_invariance_residual(C, axis, nsamples);
      },
      py::arg("C"), py::arg("axis") = 0, py::arg("nsamples") = 7);
  m.def(
      "is_orthotropic",
      [](const Matrix6d& C, double tol) {
        const OrthotropyCheck r = is_orthotropic(C, tol);
        return py::make_tuple(r.orthotropic, r.residual);
      },
      py::arg("C"), py::arg("tol") = 1e-12);
  m.def(
      "stress",
      [](const Matrix6d& C, const Eigen::Matrix3d& e) {
        return stress(C, SymTensor3::from_matrix(e)).to_matrix();
      },
      py::arg("C"), py::arg("strain"));
  m.def(
      "energy_density",
      [](const Matrix6d& C, const Eigen::Matrix3d& e) {
        return energy_density(C, SymTensor3::from_matrix(e));
      },
      py::arg("C"), py::arg("strain"));

  // ---- plate model ---------------------------------------------------------
  py::class_<PlateGeometry>(m, "PlateGeometry")
      .def(py::init([](double L, double ell, double d) {
             PlateGeometry g;
             g.L = L;
             g.ell = ell;
             g.d = d;
             return g;
           }),
           py::arg("L"), py::arg("ell"), py::arg("d") = 0.0)
      .def_readwrite("L", &PlateGeometry::L)
      .def_readwrite("ell", &PlateGeometry::ell)
      .def_readwrite("d", &PlateGeometry::d);

  py::class_<PlateMaterial>(m, "PlateMaterial")
      .def_static("derive", &PlateMaterial::derive, py::arg("E1"), py::arg("E2"), py::arg("nu"))
      .def_readonly("E1", &PlateMaterial::E1)
      .def_readonly("E2", &PlateMaterial::E2)
      .def_readonly("nu", &PlateMaterial::nu)
      .def_readonly("nu21", &PlateMaterial::nu21)
      .def_readonly("Kcal", &PlateMaterial::Kcal)
      .def_readonly("kappa", &PlateMaterial::kappa)
      .def_readonly("mu12", &PlateMaterial::mu12)
      .def("constants", &PlateMaterial::constants, py::arg("nu23") = 0.2);

  py::class_<PlateModel>(m, "PlateModel")
      .def_static(
          "make",
          [](const PlateGeometry& g, const PlateMaterial& mat, double M, py::object d,
             py::object R, double nu23) {
            std::optional<double> od, oR;
            if (!d.is_none()) od = d.cast<double>();
            if (!R.is_none()) oR = R.cast<double>();
            return PlateModel::make(g, mat, M, od, oR, nu23);
          },
          py::arg("geometry"), py::arg("material"), py::arg("M"), py::arg("d") = py::none(),
          py::arg("R") = py::none(), py::arg("nu23") = 0.2)
      .def_readonly("geometry", &PlateModel::geometry)
      .def_readonly("material", &PlateModel::material)
      .def_readonly("M", &PlateModel::M)
      .def_readonly("R", &PlateModel::R)
      .def_readonly("nu23", &PlateModel::nu23)
      .def("default_grid", &PlateModel::default_grid, py::arg("nx") = 201, py::arg("ny") = 41);

  m.def("plate_model_from_file",
        [](const std::string& path) { return plate_model_from_config(ConfigFile::load(path)); },
        py::arg("path"));

  py::class_<Grid>(m, "Grid")
      .def_static("make", &Grid::make, py::arg("L"), py::arg("ell"), py::arg("nx"),
                  py::arg("ny"))
      .def_readonly("L", &Grid::L)
      .def_readonly("ell", &Grid::ell)
      .def_readonly("nx", &Grid::nx)
      .def_readonly("ny", &Grid::ny)
      .def("x", &Grid::x, py::arg("i"))
      .def("y", &Grid::y, py::arg("j"));

  py::enum_<Deriv>(m, "Deriv")
      .value("XX", Deriv::XX)
      .value("XY", Deriv::XY)
      .value("YY", Deriv::YY)
      .value("XXY", Deriv::XXY)
      .value("YYY", Deriv::YYY)
      .value("XXXX", Deriv::XXXX)
      .value("XXYY", Deriv::XXYY)
      .value("YYYY", Deriv::YYYY);

  py::class_<DisplacementField>(m, "DisplacementField")
      .def_static("zero", &DisplacementField::zero, py::arg("grid"))
      .def_readonly("grid", &DisplacementField::grid)
      .def_readwrite("u", &DisplacementField::u)
      .def("plane", &DisplacementField::plane, py::arg("deriv"))
      .def("ensure_derivatives", &DisplacementField::ensure_derivatives);

  py::class_<EnergyCoefficients>(m, "EnergyCoefficients")
      .def_readonly("K11", &EnergyCoefficients::K11)
      .def_readonly("K22", &EnergyCoefficients::K22)
      .def_readonly("K1122", &EnergyCoefficients::K1122)
      .def_readonly("K1212", &EnergyCoefficients::K1212);

  m.def("energy_coefficients", &energy_coefficients, py::arg("material"), py::arg("nu23"));
  m.def("bending_energy", &bending_energy, py::arg("model"), py::arg("field"));
  m.def("bending_energy_expanded", &bending_energy_expanded, py::arg("model"),
        py::arg("field"));
  m.def("total_energy", &total_energy, py::arg("model"), py::arg("field"), py::arg("load"));
  m.def("h2star_inner", &h2star_inner, py::arg("model"), py::arg("u"), py::arg("v"));
  m.def("relative_interior_residual", &relative_interior_residual, py::arg("model"),
        py::arg("field"), py::arg("load"));
  m.def("relative_boundary_residual", &relative_boundary_residual, py::arg("model"),
        py::arg("field"));

  // ---- spectral ------------------------------------------------------------
  py::enum_<Parity>(m, "Parity").value("Even", Parity::Even).value("Odd", Parity::Odd);

  py::class_<ModeProblem>(m, "ModeProblem")
      .def_static("reduce", &ModeProblem::reduce, py::arg("model"), py::arg("m"))
      .def_readonly("m", &ModeProblem::m)
      .def_readonly("mu", &ModeProblem::mu)
      .def_readonly("R", &ModeProblem::R)
      .def_readonly("kappa", &ModeProblem::kappa)
      .def_readonly("nu", &ModeProblem::nu)
      .def_readonly("ell", &ModeProblem::ell);

  py::class_<EigenPair>(m, "EigenPair")
      .def_readonly("lambda_", &EigenPair::lambda)
      .def_readonly("m", &EigenPair::m)
      .def_readonly("parity", &EigenPair::parity)
      .def_readonly("mu", &EigenPair::mu)
      .def_readonly("nu_hz", &EigenPair::nu_hz)
      .def_readonly("omega", &EigenPair::omega)
      .def_readonly("rayleigh_residual", &EigenPair::rayleigh_residual)
      .def("sample_y", &EigenPair::sample_y, py::arg("ys"), py::arg("deriv") = 0)
      .def("field", &EigenPair::field, py::arg("grid"));

  m.def("mode_determinant", &mode_determinant, py::arg("mode"), py::arg("parity"),
        py::arg("lam"));
  m.def("solve_mode_eigs", &solve_mode_eigs, py::arg("mode"), py::arg("parity"), py::arg("k"));
  m.def("discretization_oracle", &discretization_oracle, py::arg("mode"), py::arg("parity"),
        py::arg("n"));

  py::class_<Spectrum>(m, "Spectrum")
      .def_readonly("pairs", &Spectrum::pairs)
      .def_readonly("lambda_vert", &Spectrum::lambda_vert)
      .def_readonly("lambda_tors", &Spectrum::lambda_tors)
      .def_readonly("vertical_hz", &Spectrum::vert_hz)
      .def_readonly("torsional_hz", &Spectrum::tors_hz)
      .def_readonly("certified_below", &Spectrum::certified_below)
      .def_readonly("m_max", &Spectrum::m_max)
      .def_readonly("k_per_mode", &Spectrum::k_per_mode);

  m.def("assemble_spectrum", &assemble_spectrum, py::arg("model"), py::arg("m_max") = 12,
        py::arg("k_per_mode") = 4);
  m.def("frequency_hz", &frequency_hz, py::arg("lam"), py::arg("M"), py::arg("ell"));

  py::class_<StaticReport>(m, "StaticReport")
      .def_readonly("truncation_rel", &StaticReport::truncation_rel)
      .def_readonly("interior_rel", &StaticReport::interior_rel)
      .def_readonly("boundary_rel", &StaticReport::boundary_rel)
      .def_readonly("bending_energy", &StaticReport::bending_energy)
      .def_readonly("total_energy", &StaticReport::total_energy)
      .def_readonly("m_max", &StaticReport::m_max);

  m.def(
      "static_solve",
      [](const PlateModel& model, const Eigen::MatrixXd& f, const Grid& grid, int m_max) {
        StaticReport report;
        DisplacementField u = static_solve(model, f, grid, m_max, &report);
        return py::make_tuple(u, report);
      },
      py::arg("model"), py::arg("load"), py::arg("grid"), py::arg("m_max") = 25);

  // ---- dynamics ------------------------------------------------------------
  py::class_<ModalState>(m, "ModalState")
      .def_readonly("modes", &ModalState::modes)
      .def_readonly("a0", &ModalState::a0)
      .def_readonly("v0", &ModalState::v0)
      .def_readonly("truncation_u", &ModalState::truncation_u)
      .def_readonly("truncation_v", &ModalState::truncation_v);

  m.def("modal_state", &modal_state, py::arg("model"), py::arg("modes"), py::arg("a0"),
        py::arg("v0"));
  m.def("project_initial", &project_initial, py::arg("model"), py::arg("u0"), py::arg("v0"),
        py::arg("spectrum"));
  m.def("coefficients_at", &coefficients_at, py::arg("state"), py::arg("t"));
  m.def("velocities_at", &velocities_at, py::arg("state"), py::arg("t"));
  m.def("evolve", &evolve, py::arg("state"), py::arg("t"), py::arg("grid"));
  m.def("energy_split", &energy_split, py::arg("state"), py::arg("t"));
  m.def("conserved_energy", &conserved_energy, py::arg("state"));
}
