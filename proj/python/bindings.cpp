#include "jcsim/evolve.hpp"
#include "jcsim/fock.hpp"
#include "jcsim/hamiltonian.hpp"
#include "jcsim/measures.hpp"
#include "jcsim/scenario.hpp"
#include "jcsim/states.hpp"

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

namespace py = pybind11;
using namespace jcsim;

PYBIND11_MODULE(_core, m) {
    m.doc() = "Two-atom single-mode cavity simulator core";

    py::register_exception<TruncationError>(m, "TruncationError");
    py::register_exception<NumericalError>(m, "NumericalError");
    py::register_exception<ParseError>(m, "ParseError");

    py::class_<TruncationPolicy>(m, "TruncationPolicy")
        .def(py::init<>())
        .def(py::init([](int n_max, int pad_factor, double tail_tol, int n_max_limit) {
                 return TruncationPolicy{n_max, pad_factor, tail_tol, n_max_limit};
             }),
             py::arg("n_max") = 80, py::arg("pad_factor") = 2, py::arg("tail_tol") = 1e-8,
             py::arg("n_max_limit") = 400)
        .def_readwrite("n_max", &TruncationPolicy::n_max)
        .def_readwrite("pad_factor", &TruncationPolicy::pad_factor)
        .def_readwrite("tail_tol", &TruncationPolicy::tail_tol)
        .def_readwrite("n_max_limit", &TruncationPolicy::n_max_limit);

    // fock
    m.def("annihilation", &annihilation, py::arg("dim"));
    m.def("creation", &creation, py::arg("dim"));
    m.def("number_operator", &number_operator, py::arg("dim"));
    m.def("parity", &parity, py::arg("dim"));
    m.def("displacement", &displacement, py::arg("alpha"), py::arg("policy"));
    m.def("displacement_full", &displacement_full, py::arg("alpha"), py::arg("dim"));
    m.def("squeeze", &squeeze, py::arg("zeta"), py::arg("policy"));
    m.def("squeeze_full", &squeeze_full, py::arg("zeta"), py::arg("dim"));
    m.def("tensor", py::overload_cast<const Matrix&, const Matrix&>(&tensor),
          py::arg("a"), py::arg("b"));
    m.def("partial_trace", &partial_trace, py::arg("rho"), py::arg("dims"), py::arg("keep"));
    m.def("partial_transpose", &partial_transpose, py::arg("rho"), py::arg("dims"),
          py::arg("transposed"));
    m.def("evolve_unitary", &evolve_unitary, py::arg("hamiltonian"), py::arg("t"));

    // states
    py::class_<FieldParams>(m, "FieldParams")
        .def(py::init<>())
        .def_readwrite("nbar_c", &FieldParams::nbar_c)
        .def_readwrite("nbar_s", &FieldParams::nbar_s)
        .def_readwrite("nbar_th", &FieldParams::nbar_th)
        .def_readwrite("phi", &FieldParams::phi)
        .def_readwrite("alpha_phase", &FieldParams::alpha_phase)
        .def("alpha", &FieldParams::alpha)
        .def("squeeze_r", &FieldParams::squeeze_r);

    py::class_<FieldState>(m, "FieldState")
        .def_readonly("rho", &FieldState::rho)
        .def_readonly("policy", &FieldState::policy)
        .def_readonly("params", &FieldState::params)
        .def_property_readonly("dim", &FieldState::dim);

    py::class_<AtomPairState>(m, "AtomPairState")
        .def_readonly("rho", &AtomPairState::rho)
        .def_readonly("param", &AtomPairState::param);

    py::class_<SystemState>(m, "SystemState")
        .def(py::init([](const Matrix& rho, double time) {
                 return SystemState{rho, time};
             }),
             py::arg("rho"), py::arg("time") = 0.0)
        .def_readonly("rho", &SystemState::rho)
        .def_readonly("time", &SystemState::time)
        .def_property_readonly("field_dim", &SystemState::field_dim);

    py::enum_<HermiteArg>(m, "HermiteArg")
        .value("tilded", HermiteArg::tilded)
        .value("untilded", HermiteArg::untilded);

    m.def("thermal_state", &thermal_state, py::arg("nbar_th"), py::arg("policy"));
    m.def("scts_state", &scts_state, py::arg("nbar_c"), py::arg("nbar_s"), py::arg("nbar_th"),
          py::arg("phi"), py::arg("policy"), py::arg("alpha_phase") = 0.0);
    m.def("pcd_analytic", &pcd_analytic, py::arg("l"), py::arg("nbar_c"), py::arg("nbar_s"),
          py::arg("nbar_th"), py::arg("phi"), py::arg("alpha_phase") = 0.0,
          py::arg("arg") = HermiteArg::tilded);
    m.def("hermite", &hermite, py::arg("q"), py::arg("x"));
    m.def("bell_atoms", &bell_atoms, py::arg("theta"));
    m.def("werner_atoms", &werner_atoms, py::arg("eta"));
    m.def("compose_initial", &compose_initial, py::arg("atoms"), py::arg("field"));

    // hamiltonian
    py::class_<ModelSpec>(m, "ModelSpec")
        .def(py::init<>())
        .def_readwrite("lambda_", &ModelSpec::lambda)
        .def_readwrite("omega", &ModelSpec::omega)
        .def_readwrite("nu", &ModelSpec::nu)
        .def_readwrite("jz", &ModelSpec::jz)
        .def_readwrite("gd", &ModelSpec::gd)
        .def_readwrite("kerr_k", &ModelSpec::kerr_k)
        .def_readwrite("detuned_form", &ModelSpec::detuned_form)
        .def_readwrite("policy", &ModelSpec::policy)
        .def("delta", &ModelSpec::delta)
        .def("chi", &ModelSpec::chi);

    m.def("build", &build, py::arg("spec"));
    m.def("build_detuned", &build_detuned, py::arg("spec"));
    m.def("build_single_atom", &build_single_atom, py::arg("lambda_"), py::arg("field_dim"));
    m.def("excitation_number", &excitation_number, py::arg("field_dim"));

    // evolve
    py::class_<TimeGrid>(m, "TimeGrid")
        .def_static("uniform", &TimeGrid::uniform, py::arg("t_max"), py::arg("n_samples"))
        .def_readonly("t_max", &TimeGrid::t_max)
        .def_readonly("steps", &TimeGrid::steps)
        .def_readonly("samples", &TimeGrid::samples);

    py::enum_<JcmBranch>(m, "JcmBranch")
        .value("excited", JcmBranch::excited)
        .value("ground", JcmBranch::ground);

    m.def("jcm_amplitudes", &jcm_amplitudes, py::arg("n"), py::arg("lambda_t"),
          py::arg("branch"));

    py::class_<Propagator>(m, "Propagator")
        .def(py::init<const Matrix&, SystemState>(), py::arg("hamiltonian"),
             py::arg("initial"))
        .def_property_readonly("dim", &Propagator::dim)
        .def_property_readonly("energies", &Propagator::energies)
        .def("state_at", &Propagator::state_at, py::arg("t"))
        .def("atoms_at", &Propagator::atoms_at, py::arg("t"));

    m.def("propagate", &propagate, py::arg("rho0"), py::arg("hamiltonian"), py::arg("grid"));
    m.def("paper_scheme", &paper_scheme, py::arg("theta"), py::arg("fock_coefficients"),
          py::arg("grid"));

    py::class_<SingleAtomTrack>(m, "SingleAtomTrack")
        .def_readonly("t", &SingleAtomTrack::t)
        .def_readonly("p_excited_exact", &SingleAtomTrack::p_excited_exact)
        .def_readonly("p_excited_closed", &SingleAtomTrack::p_excited_closed)
        .def_readonly("p_ground_exact", &SingleAtomTrack::p_ground_exact)
        .def_readonly("p_ground_closed", &SingleAtomTrack::p_ground_closed);

    m.def("single_atom_oracle", &single_atom_oracle, py::arg("n"), py::arg("grid"));

    // measures
    py::enum_<Cut>(m, "Cut")
        .value("atoms_vs_field", Cut::atoms_vs_field)
        .value("atomA_vs_rest", Cut::atomA_vs_rest);

    py::enum_<Atom>(m, "Atom").value("A", Atom::A).value("B", Atom::B);

    py::class_<WignerGridSpec>(m, "WignerGridSpec")
        .def(py::init([](double x_min, double x_max, int nx, double p_min, double p_max,
                         int np) {
                 return WignerGridSpec{x_min, x_max, nx, p_min, p_max, np};
             }),
             py::arg("x_min"), py::arg("x_max"), py::arg("nx"), py::arg("p_min"),
             py::arg("p_max"), py::arg("np"));

    py::class_<WignerGrid>(m, "WignerGrid")
        .def_readonly("xs", &WignerGrid::xs)
        .def_readonly("ps", &WignerGrid::ps)
        .def_readonly("values", &WignerGrid::values)
        .def("integral", &WignerGrid::integral);

    py::class_<EsdReport>(m, "EsdReport")
        .def_readonly("intervals", &EsdReport::intervals)
        .def_readonly("threshold", &EsdReport::threshold);

    m.def("concurrence", &concurrence, py::arg("rho_ab"));
    m.def("negativity", &negativity, py::arg("state"), py::arg("cut") = Cut::atoms_vs_field);
    m.def("negativity_general", &negativity_general, py::arg("rho"), py::arg("dims"),
          py::arg("transposed"));
    m.def("wigner", &wigner, py::arg("field"), py::arg("spec"));
    m.def("wigner_point", &wigner_point, py::arg("field"), py::arg("alpha"));
    m.def("atomic_inversion", &atomic_inversion, py::arg("state"), py::arg("atom"));
    m.def("detect_esd", &detect_esd, py::arg("times"), py::arg("values"),
          py::arg("threshold") = 1e-6);

    // scenario runner
    m.def("run_config",
          [](const std::filesystem::path& config, const std::filesystem::path& out_dir,
             const std::vector<std::string>& overrides, int threads) {
              ConfigMap cfg = parse_config_file(config);
              for (const auto& kv : overrides)
                  apply_override(cfg, kv);
              const Scenario scenario = scenario_from_config(cfg);
              if (scenario.sweep)
                  run_sweep(scenario, out_dir, threads);
              else
                  run_scenario(scenario, out_dir);
          },
          py::arg("config"), py::arg("out_dir"),
          py::arg("overrides") = std::vector<std::string>{}, py::arg("threads") = 1);
}
