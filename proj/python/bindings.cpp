#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "kerrpair/config.hpp"
#include "kerrpair/errors.hpp"

namespace py = pybind11;
using namespace kerrpair;

namespace {

py::dict row_to_dict(const SweepResult& res, const ResultRow& row) {
  py::dict d;
  for (size_t i = 0; i < res.axis_names.size(); ++i)
    d[res.axis_names[i].c_str()] = row.axis_values[i];
  for (size_t i = 0; i < res.output_names.size(); ++i) {
    if (row.outputs[i])
      d[res.output_names[i].c_str()] = *row.outputs[i];
    else
      d[res.output_names[i].c_str()] = py::none();
  }
  d["engine"] = row.engine;
  d["valid"] = row.valid;
  d["note"] = row.note;
  return d;
}

py::list result_to_rows(const SweepResult& res) {
  py::list out;
  for (const auto& row : res.rows) out.append(row_to_dict(res, row));
  return out;
}

}  // namespace

PYBIND11_MODULE(pykerrpair, m) {
  m.doc() = "photon blockade, Cauchy-Schwarz and Bell-CHSH toolkit for two "
            "coupled Kerr cavities";

  py::register_exception<UndefinedCorrelation>(m, "UndefinedCorrelation",
                                               PyExc_RuntimeError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const ConfigError& e) {
      PyErr_SetString(PyExc_ValueError, e.what());
    }
  });

  py::class_<HilbertSpec>(m, "HilbertSpec")
      .def_static("two_mode", &HilbertSpec::two_mode, py::arg("optical_cutoff") = 5)
      .def_static("with_mechanics", &HilbertSpec::with_mechanics,
                  py::arg("optical_cutoff") = 5, py::arg("phonon_cutoff") = 3)
      .def_readonly("mode_dims", &HilbertSpec::mode_dims)
      .def_readonly("mode_labels", &HilbertSpec::mode_labels)
      .def("n_modes", &HilbertSpec::n_modes)
      .def("total_dim", &HilbertSpec::total_dim)
      .def("mode_index", &HilbertSpec::mode_index);

  m.def("destroy", &destroy, py::arg("dim"));
  m.def("create", &create, py::arg("dim"));
  m.def("number_op", &number_op, py::arg("dim"));
  m.def("identity", &identity, py::arg("dim"));
  m.def("tensor", [](const std::vector<Operator>& ops) { return tensor(ops); });
  m.def("embed", &embed, py::arg("op"), py::arg("mode"), py::arg("spec"));
  m.def("expect", &expect, py::arg("op"), py::arg("rho"));
  m.def("fock", &fock, py::arg("dim"), py::arg("n"));
  m.def("coherent", &coherent, py::arg("dim"), py::arg("alpha"));
  m.def("basis_state", [](const HilbertSpec& spec, const std::vector<int>& occ) {
    return basis_state(spec, occ);
  });
  m.def("basis_index", [](const HilbertSpec& spec, const std::vector<int>& occ) {
    return basis_index(spec, occ);
  });

  py::class_<ModelParams>(m, "ModelParams")
      .def(py::init<>())
      .def_readwrite("delta1", &ModelParams::delta1)
      .def_readwrite("delta2", &ModelParams::delta2)
      .def_readwrite("u1", &ModelParams::u1)
      .def_readwrite("u2", &ModelParams::u2)
      .def_readwrite("j_hop", &ModelParams::j_hop)
      .def_readwrite("e1", &ModelParams::e1)
      .def_readwrite("e2", &ModelParams::e2)
      .def_readwrite("theta1", &ModelParams::theta1)
      .def_readwrite("theta2", &ModelParams::theta2)
      .def_readwrite("kappa1", &ModelParams::kappa1)
      .def_readwrite("kappa2", &ModelParams::kappa2)
      .def_readwrite("gamma", &ModelParams::gamma)
      .def_readwrite("n_th", &ModelParams::n_th)
      .def_readwrite("omega_m", &ModelParams::omega_m)
      .def_readwrite("g_om", &ModelParams::g_om)
      .def_readwrite("include_mechanics", &ModelParams::include_mechanics)
      .def("set_delta", &ModelParams::set_delta)
      .def("set_u", &ModelParams::set_u)
      .def("set_kappa", &ModelParams::set_kappa)
      .def("validate", &ModelParams::validate);

  py::class_<KerrCoefficient>(m, "KerrCoefficient")
      .def_readonly("u", &KerrCoefficient::u)
      .def_readonly("weak_coupling_valid", &KerrCoefficient::weak_coupling_valid);
  m.def("effective_kerr_u", &effective_kerr_u, py::arg("g_om"), py::arg("omega_m"));
  m.def("drive_amplitude_from_power", &drive_amplitude_from_power, py::arg("power"),
        py::arg("kappa"), py::arg("omega_laser"));

  m.def("build_effective_hamiltonian", &build_effective_hamiltonian, py::arg("params"),
        py::arg("spec"));
  m.def("build_lab_hamiltonian", &build_lab_hamiltonian, py::arg("params"),
        py::arg("spec"));
  m.def("collapse_operators", [](const ModelParams& p, const HilbertSpec& spec) {
    py::list out;
    for (const auto& c : collapse_operators(p, spec))
      out.append(py::make_tuple(c.op, c.rate));
    return out;
  });

  py::class_<DensityMatrix>(m, "DensityMatrix")
      .def(py::init<Eigen::MatrixXcd>())
      .def_static("pure", &DensityMatrix::pure)
      .def_static("vacuum", &DensityMatrix::vacuum)
      .def_property_readonly("matrix", &DensityMatrix::matrix)
      .def("dim", &DensityMatrix::dim)
      .def("hermiticity_error", &DensityMatrix::hermiticity_error)
      .def("trace_error", &DensityMatrix::trace_error)
      .def("min_eigenvalue", &DensityMatrix::min_eigenvalue)
      .def("populations", &DensityMatrix::populations);

  py::class_<Superoperator>(m, "Superoperator")
      .def("hilbert_dim", &Superoperator::hilbert_dim)
      .def("vec_dim", &Superoperator::vec_dim)
      .def("dense", &Superoperator::dense)
      .def("apply",
           [](const Superoperator& l, const Eigen::MatrixXcd& rho) { return l.apply(rho); });

  m.def("liouvillian",
        [](const Operator& h, const std::vector<std::pair<Operator, double>>& collapses) {
          std::vector<Collapse> cs;
          cs.reserve(collapses.size());
          for (const auto& [op, rate] : collapses) cs.push_back({op, rate});
          return liouvillian(h, cs);
        },
        py::arg("hamiltonian"), py::arg("collapses"));

  py::class_<EvolveOptions>(m, "EvolveOptions")
      .def(py::init<>())
      .def_readwrite("dt", &EvolveOptions::dt)
      .def_readwrite("adaptive", &EvolveOptions::adaptive)
      .def_readwrite("step_tol", &EvolveOptions::step_tol)
      .def_readwrite("min_dt", &EvolveOptions::min_dt);

  m.def("evolve",
        [](const DensityMatrix& rho0, const Superoperator& l,
           const std::vector<double>& t_grid, const EvolveOptions& opts) {
          return evolve(rho0, l, t_grid, opts);
        },
        py::arg("rho0"), py::arg("liouvillian"), py::arg("t_grid"),
        py::arg("opts") = EvolveOptions{});
  m.def("steady_state", &steady_state, py::arg("liouvillian"));

  m.def("mean_photon", &mean_photon, py::arg("rho"), py::arg("mode"), py::arg("spec"));
  m.def("g2_auto", &g2_auto, py::arg("rho"), py::arg("mode"), py::arg("spec"));
  m.def("g2_cross", &g2_cross, py::arg("rho"), py::arg("mode_i"), py::arg("mode_j"),
        py::arg("spec"));
  m.def("csi_witness", &csi_witness, py::arg("rho"), py::arg("spec"));
  m.def("photon_covariance", &photon_covariance, py::arg("rho"), py::arg("spec"));
  m.def("g2_tau",
        [](const DensityMatrix& rho_ss, const Superoperator& l, int mode,
           const std::vector<double>& tau_grid, const HilbertSpec& spec,
           const EvolveOptions& opts) {
          return g2_tau(rho_ss, l, mode, tau_grid, spec, opts);
        },
        py::arg("rho_ss"), py::arg("liouvillian"), py::arg("mode"), py::arg("tau_grid"),
        py::arg("spec"), py::arg("opts") = EvolveOptions{});

  py::class_<CorrelationReport>(m, "CorrelationReport")
      .def_readonly("n1", &CorrelationReport::n1)
      .def_readonly("n2", &CorrelationReport::n2)
      .def_readonly("g2_a1", &CorrelationReport::g2_a1)
      .def_readonly("g2_a2", &CorrelationReport::g2_a2)
      .def_readonly("g2_cross", &CorrelationReport::g2_cross)
      .def_readonly("csi", &CorrelationReport::csi);
  m.def("correlation_report", &correlation_report, py::arg("rho"), py::arg("spec"));

  py::class_<AmplitudeSet>(m, "AmplitudeSet")
      .def_readonly("c00", &AmplitudeSet::c00)
      .def_readonly("c10", &AmplitudeSet::c10)
      .def_readonly("c01", &AmplitudeSet::c01)
      .def_readonly("c11", &AmplitudeSet::c11)
      .def_readonly("c20", &AmplitudeSet::c20)
      .def_readonly("c02", &AmplitudeSet::c02)
      .def("hierarchy_satisfied", &AmplitudeSet::hierarchy_satisfied);
  py::class_<AnalyticG2>(m, "AnalyticG2")
      .def_readonly("g2_a1", &AnalyticG2::g2_a1)
      .def_readonly("g2_a2", &AnalyticG2::g2_a2)
      .def_readonly("g2_cross", &AnalyticG2::g2_cross);

  py::enum_<ChshCrossTerm>(m, "ChshCrossTerm")
      .value("PhaseAware", ChshCrossTerm::PhaseAware)
      .value("ModulusPrinted", ChshCrossTerm::ModulusPrinted);

  m.def("steady_amplitudes", &steady_amplitudes, py::arg("params"));
  m.def("analytic_g2", &analytic_g2, py::arg("params"));
  m.def("analytic_csi", &analytic_csi, py::arg("params"));
  m.def("analytic_chsh", &analytic_chsh, py::arg("params"),
        py::arg("cross") = ChshCrossTerm::PhaseAware);
  m.def("blockade_condition_residual", &blockade_condition_residual, py::arg("params"));

  py::enum_<BellLabel>(m, "BellLabel")
      .value("PhiPlus", BellLabel::PhiPlus)
      .value("PhiMinus", BellLabel::PhiMinus)
      .value("PsiPlus", BellLabel::PsiPlus)
      .value("PsiMinus", BellLabel::PsiMinus);

  py::class_<AngleSet>(m, "AngleSet")
      .def(py::init<>())
      .def_readwrite("theta", &AngleSet::theta)
      .def_readwrite("theta_prime", &AngleSet::theta_prime)
      .def_readwrite("phi", &AngleSet::phi)
      .def_readwrite("phi_prime", &AngleSet::phi_prime);

  m.def("bell_state", &bell_state, py::arg("which"), py::arg("spec"));
  m.def("chsh_correlator", &chsh_correlator, py::arg("rho"), py::arg("spec"),
        py::arg("theta"), py::arg("phi"));
  m.def("chsh_from_state", &chsh_from_state, py::arg("rho"), py::arg("spec"),
        py::arg("angles") = AngleSet{});
  m.def("chsh_closed_form", &chsh_closed_form, py::arg("rho"), py::arg("spec"));
  m.def("bell_fidelity", &bell_fidelity, py::arg("rho"), py::arg("which"), py::arg("spec"));
  m.def("bell_fidelity_renormalized", &bell_fidelity_renormalized, py::arg("rho"),
        py::arg("which"), py::arg("spec"));

  py::class_<TransformCheckReport>(m, "TransformCheckReport")
      .def_readonly("sum_rule_a", &TransformCheckReport::sum_rule_a)
      .def_readonly("sum_rule_b", &TransformCheckReport::sum_rule_b)
      .def_readonly("difference_form_a", &TransformCheckReport::difference_form_a)
      .def_readonly("difference_form_b", &TransformCheckReport::difference_form_b)
      .def("max_deviation", &TransformCheckReport::max_deviation)
      .def("passed", &TransformCheckReport::passed, py::arg("tol") = 1e-13);
  m.def("mode_transformation_check", &mode_transformation_check, py::arg("theta"),
        py::arg("phi"));

  py::enum_<Engine>(m, "Engine")
      .value("MasterEquation", Engine::MasterEquation)
      .value("Analytic", Engine::Analytic)
      .value("Both", Engine::Both);

  py::class_<SweepAxis>(m, "SweepAxis")
      .def(py::init<>())
      .def_readwrite("name", &SweepAxis::name)
      .def_readwrite("min", &SweepAxis::min)
      .def_readwrite("max", &SweepAxis::max)
      .def_readwrite("points", &SweepAxis::points)
      .def_readwrite("log_spacing", &SweepAxis::log_spacing)
      .def("values", &SweepAxis::values);

  py::class_<SweepSpec>(m, "SweepSpec")
      .def(py::init<>())
      .def_readwrite("axes", &SweepSpec::axes)
      .def_readwrite("fixed", &SweepSpec::fixed)
      .def_readwrite("space", &SweepSpec::space)
      .def_readwrite("outputs", &SweepSpec::outputs)
      .def_readwrite("engine", &SweepSpec::engine)
      .def_readwrite("workers", &SweepSpec::workers);

  py::class_<SweepResult>(m, "SweepResult")
      .def_readonly("axis_names", &SweepResult::axis_names)
      .def_readonly("output_names", &SweepResult::output_names)
      .def("rows", &result_to_rows)
      .def("to_json", &to_json_string);

  m.def("known_outputs", &known_outputs);
  m.def("run_sweep", &run_sweep, py::arg("spec"));
  m.def("preset_names", &preset_names);
  m.def("figure_preset",
        [](const std::string& name, bool me_spot_check, int workers) {
          PresetOptions opts;
          opts.me_spot_check = me_spot_check;
          opts.workers = workers;
          return figure_preset(name, opts);
        },
        py::arg("name"), py::arg("me_spot_check") = false, py::arg("workers") = 0);
  m.def("write_csv", &write_csv, py::arg("result"), py::arg("path"));
  m.def("read_csv", &read_csv, py::arg("path"));
  m.def("write_json", &write_json, py::arg("result"), py::arg("path"));
}
