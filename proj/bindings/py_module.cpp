#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "hhinv/landweber.hpp"
#include "hhinv/model.hpp"
#include "hhinv/noise.hpp"
#include "hhinv/rates.hpp"

namespace py = pybind11;
using namespace hhinv;

PYBIND11_MODULE(_core, mod) {
    mod.doc() = "Hodgkin-Huxley forward solves and adjoint Landweber parameter recovery";

    py::enum_<Gate>(mod, "Gate")
        .value("m", Gate::m)
        .value("n", Gate::n)
        .value("h", Gate::h);

    py::enum_<ParameterKind>(mod, "ParameterKind")
        .value("conductances", ParameterKind::conductances)
        .value("exponents", ParameterKind::exponents);

    py::enum_<StopReason>(mod, "StopReason")
        .value("discrepancy", StopReason::discrepancy)
        .value("max_iterations", StopReason::max_iterations)
        .value("zero_gradient", StopReason::zero_gradient);

    py::class_<ModelConstants>(mod, "ModelConstants")
        .def(py::init<>())
        .def_readwrite("c_m", &ModelConstants::c_m)
        .def_readwrite("e_na", &ModelConstants::e_na)
        .def_readwrite("e_k", &ModelConstants::e_k)
        .def_readwrite("e_l", &ModelConstants::e_l)
        .def_readwrite("i_ext", &ModelConstants::i_ext)
        .def_readwrite("v0", &ModelConstants::v0)
        .def_readwrite("m0", &ModelConstants::m0)
        .def_readwrite("n0", &ModelConstants::n0)
        .def_readwrite("h0", &ModelConstants::h0);

    py::class_<Conductances>(mod, "Conductances")
        .def(py::init<double, double, double>(), py::arg("g_na"), py::arg("g_k"), py::arg("g_l"))
        .def_readwrite("g_na", &Conductances::g_na)
        .def_readwrite("g_k", &Conductances::g_k)
        .def_readwrite("g_l", &Conductances::g_l);

    py::class_<Exponents>(mod, "Exponents")
        .def(py::init<double, double, double>(), py::arg("a"), py::arg("b"), py::arg("c"))
        .def_readwrite("a", &Exponents::a)
        .def_readwrite("b", &Exponents::b)
        .def_readwrite("c", &Exponents::c);

    py::class_<TimeGrid>(mod, "TimeGrid")
        .def(py::init<double, double>(), py::arg("t_end"), py::arg("dt"))
        .def_readonly("t_end", &TimeGrid::t_end)
        .def_readonly("dt", &TimeGrid::dt)
        .def_readonly("n_steps", &TimeGrid::n_steps);

    py::class_<Trajectory>(mod, "Trajectory")
        .def_readonly("grid", &Trajectory::grid)
        .def_readonly("v", &Trajectory::v)
        .def_readonly("m", &Trajectory::m)
        .def_readonly("n", &Trajectory::n)
        .def_readonly("h", &Trajectory::h);

    py::class_<NoiseSpec>(mod, "NoiseSpec")
        .def(py::init<double, std::uint64_t>(), py::arg("epsilon"), py::arg("seed"))
        .def_readwrite("epsilon", &NoiseSpec::epsilon)
        .def_readwrite("seed", &NoiseSpec::seed);

    py::class_<Observation>(mod, "Observation")
        .def_readonly("grid", &Observation::grid)
        .def_readonly("v_delta", &Observation::v_delta)
        .def_readonly("delta", &Observation::delta)
        .def_readonly("epsilon", &Observation::epsilon);

    py::class_<ParameterVector>(mod, "ParameterVector")
        .def(py::init([](ParameterKind kind, const Vec3& values) {
                 return ParameterVector{kind, values};
             }),
             py::arg("kind"), py::arg("values"))
        .def_readwrite("kind", &ParameterVector::kind)
        .def_readwrite("values", &ParameterVector::values);

    py::class_<StoppingRule>(mod, "StoppingRule")
        .def(py::init<double, double, std::size_t>(), py::arg("tau"), py::arg("delta"),
             py::arg("max_iterations"))
        .def_readwrite("tau", &StoppingRule::tau)
        .def_readwrite("delta", &StoppingRule::delta)
        .def_readwrite("max_iterations", &StoppingRule::max_iterations);

    py::class_<IterationRecord>(mod, "IterationRecord")
        .def_readonly("k", &IterationRecord::k)
        .def_readonly("iterate", &IterationRecord::iterate)
        .def_readonly("residual_norm", &IterationRecord::residual_norm)
        .def_readonly("percent_error", &IterationRecord::percent_error);

    py::class_<RunResult>(mod, "RunResult")
        .def_readonly("records", &RunResult::records)
        .def_readonly("k_star", &RunResult::k_star)
        .def_readonly("stop_reason", &RunResult::stop_reason)
        .def_readonly("final_iterate", &RunResult::final_iterate)
        .def_readonly("threshold", &RunResult::threshold)
        .def_readonly("used_residual_floor", &RunResult::used_residual_floor);

    mod.def("rate_alpha", &rate_alpha, py::arg("gate"), py::arg("v"));
    mod.def("rate_beta", &rate_beta, py::arg("gate"), py::arg("v"));
    mod.def("rate_alpha_prime", &rate_alpha_prime, py::arg("gate"), py::arg("v"));
    mod.def("rate_beta_prime", &rate_beta_prime, py::arg("gate"), py::arg("v"));
    mod.def("gating_steady_state", &gating_steady_state, py::arg("gate"), py::arg("v"));

    mod.def("solve_forward", &solve_forward, py::arg("constants"), py::arg("conductances"),
            py::arg("exponents"), py::arg("grid"),
            py::call_guard<py::gil_scoped_release>());
    mod.def("l2_norm", &l2_norm, py::arg("signal"), py::arg("grid"));
    mod.def("add_noise", &add_noise, py::arg("clean"), py::arg("grid"), py::arg("spec"));
    mod.def("residual_norm", &residual_norm, py::arg("observation"), py::arg("simulated"));
    mod.def("percent_error", &percent_error, py::arg("truth"), py::arg("iterate"));
    mod.def("run_inversion", &run_inversion, py::arg("constants"), py::arg("conductances"),
            py::arg("exponents"), py::arg("grid"), py::arg("observed"), py::arg("rule"),
            py::arg("unknown"), py::arg("truth") = std::nullopt,
            py::call_guard<py::gil_scoped_release>());

    py::register_exception<divergence_error>(mod, "DivergenceError", PyExc_RuntimeError);
    py::register_exception<zero_gradient_error>(mod, "ZeroGradientError", PyExc_RuntimeError);
}
