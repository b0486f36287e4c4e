// Python bindings for the kernel, evolvers, benchmark and experiment driver.

#include <pybind11/functional.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "tdflow/benchmark.hpp"
#include "tdflow/consistency.hpp"
#include "tdflow/error.hpp"
#include "tdflow/evolve.hpp"
#include "tdflow/harness.hpp"
#include "tdflow/kernel.hpp"

namespace py = pybind11;
using namespace tdflow;

namespace {

std::vector<double> to_vec(std::span<const double> s) { return {s.begin(), s.end()}; }

py::array_t<double> samples_array(const GraphInterface& f) {
    return py::array_t<double>(static_cast<py::ssize_t>(f.size()), f.samples().data());
}

// Cells as a (ny, nx) uint8 array; row j holds y index j.
py::array_t<std::uint8_t> cells_array(const GridField& g) {
    py::array_t<std::uint8_t> out({static_cast<py::ssize_t>(g.ny()), static_cast<py::ssize_t>(g.nx())});
    std::copy(g.cells().begin(), g.cells().end(), out.mutable_data());
    return out;
}

GridField field_from_array(py::array_t<std::uint8_t, py::array::c_style | py::array::forcecast> a, double lx,
                           double ly) {
    if (a.ndim() != 2) throw Error(ErrorKind::InvalidArgument, "grid array must be two-dimensional");
    const auto ny = static_cast<std::size_t>(a.shape(0));
    const auto nx = static_cast<std::size_t>(a.shape(1));
    std::vector<std::uint8_t> cells(a.data(), a.data() + nx * ny);
    for (auto& c : cells) c = c ? 1 : 0;
    return GridField(nx, ny, lx, ly, std::move(cells));
}

std::string table_json(const ErrorTable& t) {
    std::ostringstream os;
    emit(t, TableFormat::Json, os);
    return os.str();
}

}  // namespace

PYBIND11_MODULE(_tdflow, m) {
    m.doc() = "Threshold dynamics for curvature flow";

    auto base = py::register_exception<Error>(m, "TdflowError", PyExc_RuntimeError);
    py::register_exception<BracketError>(m, "BracketError", base.ptr());
    py::register_exception<DegenerateSpecError>(m, "DegenerateSpecError", base.ptr());

    py::class_<KernelSpec>(m, "KernelSpec")
        .def(py::init<std::vector<double>, std::vector<double>>(), py::arg("scales"), py::arg("coeffs"))
        .def_static("gaussian", &KernelSpec::gaussian)
        .def_property_readonly("scales", [](const KernelSpec& k) { return to_vec(k.scales()); })
        .def_property_readonly("coeffs", [](const KernelSpec& k) { return to_vec(k.coeffs()); })
        .def_property_readonly("threshold", &KernelSpec::threshold)
        .def_property_readonly("step_ratio", &KernelSpec::step_ratio)
        .def_property_readonly("total_mass", &KernelSpec::total_mass)
        .def("__eq__", [](const KernelSpec& a, const KernelSpec& b) { return a == b; })
        .def("__repr__", [](const KernelSpec& k) { return "KernelSpec(\n" + kernel_to_string(k) + ")"; })
        .def("to_string", &kernel_to_string)
        .def_static("from_string", &kernel_from_string);

    m.def("solve_special_kernel", &solve_special_kernel, py::arg("tolerance") = 1e-14);
    m.def("theta", &theta, py::arg("spec"), py::arg("p"));
    m.def("special_cubic", &special_cubic);
    m.def("special_cubic_rational", &special_cubic_rational);
    m.def("eval_radial", &eval_radial, py::arg("spec"), py::arg("r"), py::arg("d") = 2);
    m.def("fourier_multiplier", &fourier_multiplier, py::arg("spec"), py::arg("k_norm"), py::arg("t"));
    m.def("load_kernel", &load_kernel);
    m.def("save_kernel", &save_kernel);

    py::class_<PositivityCertificate>(m, "PositivityCertificate")
        .def_readonly("min_value", &PositivityCertificate::min_value)
        .def_readonly("argmin_xi", &PositivityCertificate::argmin_xi)
        .def_readonly("is_positive", &PositivityCertificate::is_positive)
        .def_readonly("lower_bound_holds", &PositivityCertificate::lower_bound_holds);
    m.def("positivity_certificate", &positivity_certificate);

    py::class_<FourierProbe>(m, "FourierProbe")
        .def_readonly("found", &FourierProbe::found)
        .def_readonly("k_norm", &FourierProbe::k_norm)
        .def_readonly("t", &FourierProbe::t)
        .def_readonly("value", &FourierProbe::value);
    m.def("find_negative_multiplier", [](const KernelSpec& k) { return find_negative_multiplier(k); });

    py::class_<ExpansionReport>(m, "ExpansionReport")
        .def_readonly("a1", &ExpansionReport::a1)
        .def_readonly("a2", &ExpansionReport::a2)
        .def_readonly("B1", &ExpansionReport::B1)
        .def_readonly("B2", &ExpansionReport::B2)
        .def_readonly("B3", &ExpansionReport::B3)
        .def_readonly("B4", &ExpansionReport::B4)
        .def_readonly("residual_theta1", &ExpansionReport::residual_theta1)
        .def_readonly("residual_theta2", &ExpansionReport::residual_theta2);
    m.def(
        "scheme_expansion_2d",
        [](const KernelSpec& k, double g2, double g4) { return scheme_expansion_2d(k, {g2, g4}); },
        py::arg("spec"), py::arg("g2") = 1.0, py::arg("g4") = 0.0);
    m.def("scheme_expansion_3d", &scheme_expansion_3d);

    py::class_<ObstructionResult>(m, "ObstructionResult")
        .def_readonly("passed", &ObstructionResult::passed)
        .def_readonly("checked", &ObstructionResult::checked)
        .def_readonly("rejected", &ObstructionResult::rejected)
        .def_readonly("max_relative_deviation", &ObstructionResult::max_relative_deviation)
        .def_readonly("theta1_zero_checked", &ObstructionResult::theta1_zero_checked);
    m.def("obstruction_check_3d", &obstruction_check_3d, py::arg("n_random") = 100, py::arg("seed") = 0);

    py::class_<GraphInterface>(m, "GraphInterface")
        .def(py::init<double, std::vector<double>>(), py::arg("period"), py::arg("samples"))
        .def_property_readonly("period", &GraphInterface::period)
        .def_property_readonly("samples", &samples_array)
        .def_property_readonly("nodes",
                               [](const GraphInterface& f) {
                                   std::vector<double> x(f.size());
                                   for (std::size_t i = 0; i < x.size(); ++i) x[i] = f.node(i);
                                   return x;
                               })
        .def("__len__", &GraphInterface::size)
        .def("__eq__", [](const GraphInterface& a, const GraphInterface& b) { return a == b; });
    m.def("resample", &resample);
    m.def("load_graph", &load_graph);
    m.def("save_graph", &save_graph);

    py::class_<GraphQuadrature> quad(m, "GraphQuadrature");
    py::enum_<GraphQuadrature::Refinement>(quad, "Refinement")
        .value("Spectral", GraphQuadrature::Refinement::Spectral)
        .value("Linear", GraphQuadrature::Refinement::Linear);
    quad.def(py::init<>())
        .def_readwrite("refinement", &GraphQuadrature::refinement)
        .def_readwrite("window_tolerance", &GraphQuadrature::window_tolerance)
        .def_readwrite("spacing_factor", &GraphQuadrature::spacing_factor);

    m.def(
        "graph_convolution",
        [](const GraphInterface& f, double x, double y, const KernelSpec& k, double t, const GraphQuadrature& q) {
            return graph_convolution(f, x, y, StepParams(k, t), q);
        },
        py::arg("f"), py::arg("x"), py::arg("y"), py::arg("spec"), py::arg("t"), py::arg("quad") = GraphQuadrature{});
    m.def(
        "graph_step",
        [](const GraphInterface& f, const KernelSpec& k, double t, const GraphQuadrature& q) {
            return graph_step(f, StepParams(k, t), q);
        },
        py::arg("f"), py::arg("spec"), py::arg("t"), py::arg("quad") = GraphQuadrature{});
    m.def("graph_evolve", &graph_evolve, py::arg("f0"), py::arg("T"), py::arg("n_steps"), py::arg("spec"),
          py::arg("effective_time") = true, py::arg("quad") = GraphQuadrature{});
    m.def(
        "radial_step", [](double r0, const KernelSpec& k, double t) { return radial_step(r0, StepParams(k, t)); },
        py::arg("r0"), py::arg("spec"), py::arg("t"));

    m.def(
        "grid_step",
        [](py::array_t<std::uint8_t, py::array::c_style | py::array::forcecast> cells, double lx, double ly,
           const KernelSpec& k, double t) {
            return cells_array(grid_step(field_from_array(cells, lx, ly), StepParams(k, t), [](const std::string&) {}));
        },
        py::arg("cells"), py::arg("lx"), py::arg("ly"), py::arg("spec"), py::arg("t"),
        "One step on a (ny, nx) indicator array over [0, lx) x [0, ly).");
    m.def(
        "grid_evolve",
        [](py::array_t<std::uint8_t, py::array::c_style | py::array::forcecast> cells, double lx, double ly,
           double T, std::size_t n_steps, const KernelSpec& k, bool effective) {
            return cells_array(grid_evolve(field_from_array(cells, lx, ly), T, n_steps, k, effective,
                                           [](const std::string&) {}));
        },
        py::arg("cells"), py::arg("lx"), py::arg("ly"), py::arg("T"), py::arg("n_steps"), py::arg("spec"),
        py::arg("effective_time") = true);

    m.def("circle_exact", &circle_exact, py::arg("r0"), py::arg("t"));
    m.def(
        "fd_solve",
        [](const GraphInterface& f0, double T, std::size_t n_space, double dt, bool extrapolate) {
            FDConfig c;
            c.T = T;
            c.n_space = n_space;
            c.dt = dt;
            return extrapolate ? fd_solve_extrapolated(f0, c) : fd_solve(f0, c);
        },
        py::arg("f0"), py::arg("T"), py::arg("n_space") = 4096, py::arg("dt") = 0.0, py::arg("extrapolate") = false);

    m.def("l2_error", &l2_error);
    m.def("resolve_initial", &resolve_initial, py::arg("choice"), py::arg("n"));
    m.def(
        "run_graph_convergence",
        [](const std::string& config_text) { return table_json(run_graph_convergence(parse_config_string(config_text))); },
        py::arg("config_text"), "Runs a graph-converge config (config file syntax) and returns the JSON table.");
    m.def(
        "run_circle_lte",
        [](const std::string& config_text) {
            std::vector<std::string> out;
            for (const ErrorTable& t : run_circle_lte(parse_config_string(config_text))) out.push_back(table_json(t));
            return out;
        },
        py::arg("config_text"));
}
