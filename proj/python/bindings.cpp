#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "fkwave/acceptance.hpp"
#include "fkwave/lattice.hpp"
#include "fkwave/twotrans.hpp"
#include "fkwave/waves.hpp"

namespace py = pybind11;
using namespace fkwave;

namespace {

py::array_t<double> to_array(const std::vector<double>& v) {
    return py::array_t<double>(static_cast<py::ssize_t>(v.size()), v.data());
}

py::dict json_to_dict(const Json& j) {
    py::object loads = py::module_::import("json").attr("loads");
    return loads(j.dump());
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "travelling waves of a discrete chain with piecewise-quadratic on-site forcing";

    py::register_exception<Error>(m, "FkwaveError");

    py::class_<Params>(m, "Params")
        .def(py::init<double, double, double, double>(), py::arg("c_squared"),
             py::arg("epsilon") = 0.01, py::arg("gamma") = 0.0, py::arg("rho") = 0.5)
        .def_property_readonly("c2", &Params::c2)
        .def_property_readonly("c", &Params::c)
        .def_property_readonly("alpha", &Params::alpha)
        .def_property_readonly("k0", &Params::k0)
        .def_property_readonly("epsilon", &Params::epsilon)
        .def_property_readonly("gamma", &Params::gamma)
        .def_property_readonly("rho", &Params::rho);

    py::class_<Grid>(m, "Grid")
        .def(py::init<int, int>(), py::arg("half_length") = 64, py::arg("points_per_unit") = 16)
        .def_readonly("half_length", &Grid::half_length)
        .def_readonly("points_per_unit", &Grid::points_per_unit)
        .def_property_readonly("n", &Grid::n)
        .def_property_readonly("h", &Grid::h)
        .def("x", [](const Grid& g) {
            std::vector<double> xs(g.n());
            for (int i = 0; i < g.n(); ++i) xs[i] = g.x(i);
            return to_array(xs);
        });

    py::class_<SolverConfig>(m, "SolverConfig")
        .def(py::init<>())
        .def_readwrite("outer_tol", &SolverConfig::outer_tol)
        .def_readwrite("residual_tol", &SolverConfig::residual_tol)
        .def_readwrite("max_outer", &SolverConfig::max_outer)
        .def_readwrite("omega", &SolverConfig::omega)
        .def_readwrite("beta_inner_tol", &SolverConfig::beta_inner_tol)
        .def_readwrite("beta_max", &SolverConfig::beta_max)
        .def_readwrite("rho_override", &SolverConfig::rho_override);

    m.def("dispersion", [](double zeta, const Params& p) {
        const auto d = dispersion_eval(zeta, p);
        return py::make_tuple(d.value, d.derivative);
    }, py::arg("zeta"), py::arg("params"));
    m.def("kernel_roots", [](const Params& p) {
        const auto r = kernel_roots(p);
        return py::make_tuple(r.positive, r.negative, r.certified);
    });
    m.def("inversion_constants", [](const Params& p) {
        const auto ic = inversion_constants(p);
        return py::make_tuple(ic.c1, ic.bound_factor);
    });

    m.def("front_profile", py::vectorize([](double x, double c2) {
        return front_profile(x, Params(c2));
    }), py::arg("x"), py::arg("c2"));
    m.def("odd_carrier", py::vectorize(&odd_carrier));
    m.def("even_carrier", py::vectorize(&even_carrier));
    m.def("blend_step", py::vectorize(&blend_step));
    m.def("mollified_sign", py::vectorize(&mollified_sign), py::arg("s"), py::arg("eps"));

    py::class_<Stage1Solution>(m, "Stage1Solution")
        .def_property_readonly("rho0", [](const Stage1Solution& s) { return s.rho0; })
        .def_property_readonly("residual", [](const Stage1Solution& s) { return s.residual; })
        .def_property_readonly("sup_r", [](const Stage1Solution& s) { return s.sup_r; })
        .def_property_readonly("sup_r_deriv", [](const Stage1Solution& s) { return s.sup_r_deriv; })
        .def_property_readonly("corrector",
                               [](const Stage1Solution& s) { return to_array(s.corrector.values); })
        .def("u_p", [](const Stage1Solution& s) { return to_array(s.u_p.sample_total()); })
        .def("diagnostics", [](const Stage1Solution& s) { return json_to_dict(s.diagnostics); });

    py::class_<WaveSolution>(m, "WaveSolution")
        .def_property_readonly("beta", [](const WaveSolution& s) { return s.beta; })
        .def_property_readonly("gamma", [](const WaveSolution& s) { return s.gamma; })
        .def_property_readonly("residual", [](const WaveSolution& s) { return s.residual; })
        .def_property_readonly("r_h2", [](const WaveSolution& s) { return s.r_h2; })
        .def_property_readonly("sign_margin", [](const WaveSolution& s) { return s.sign_margin; })
        .def_property_readonly("corrector",
                               [](const WaveSolution& s) { return to_array(s.corrector.values); })
        .def("u", [](const WaveSolution& s) { return to_array(s.u.sample_total()); })
        .def("u_at", [](const WaveSolution& s, double x) { return s.u(x); })
        .def("diagnostics", [](const WaveSolution& s) { return json_to_dict(s.diagnostics); });

    py::class_<TwoTransSolution>(m, "TwoTransSolution")
        .def_property_readonly("beta_e", [](const TwoTransSolution& s) { return s.beta_e; })
        .def_property_readonly("gamma_tilde",
                               [](const TwoTransSolution& s) { return s.gamma_tilde; })
        .def_property_readonly("residual", [](const TwoTransSolution& s) { return s.residual; })
        .def_property_readonly("sign_changes",
                               [](const TwoTransSolution& s) { return s.sign_changes; })
        .def("u", [](const TwoTransSolution& s) { return to_array(s.u.sample_total()); })
        .def("diagnostics", [](const TwoTransSolution& s) { return json_to_dict(s.diagnostics); });

    m.def("solve_stage1", &solve_stage1, py::arg("params"), py::arg("grid"),
          py::arg("config") = SolverConfig{});
    m.def("solve_stage2", &solve_stage2, py::arg("params"), py::arg("grid"),
          py::arg("config"), py::arg("stage1"));
    m.def("solve_two_transition", &solve_two_transition, py::arg("x0"), py::arg("params"),
          py::arg("grid"), py::arg("stage1"), py::arg("config") = SolverConfig{});

    m.def("simulate", [](const WaveSolution& sol, int K, double T, double dt, std::string force) {
        const ChainForce f = force == "sgn" ? ChainForce::sgn
                             : force == "linear" ? ChainForce::linear
                                                 : ChainForce::psi_eps;
        const auto sim = simulate(sol.u, sol.params, K, T, dt, f);
        return py::make_tuple(sim.max_error, sim.energy_drift_rate);
    }, py::arg("solution"), py::arg("K") = 64, py::arg("T") = 20.0, py::arg("dt") = 0.01,
       py::arg("force") = "psi");

    m.def("run_acceptance", [](const std::string& name) {
        const auto r = accept::run_criterion(name);
        return py::make_tuple(r.passed, json_to_dict(r.details));
    });
    m.def("acceptance_names", &accept::criterion_names);
}
