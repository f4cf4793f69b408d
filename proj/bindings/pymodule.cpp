// Python bindings for the core operations.
#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <array>
#include <complex>
#include <vector>

#include "spincoh/atomics.hpp"
#include "spincoh/rates.hpp"
#include "spincoh/verify.hpp"

namespace py = pybind11;
using namespace spincoh;

namespace {

LayerStack make_stack(double skin_depth, double film_h, std::complex<double> substrate_eps) {
    const auto film = PermittivityModel::drude(skin_depth);
    if (std::isinf(film_h)) return LayerStack::half_space(film);
    const auto sub = substrate_eps == std::complex<double>(1.0, 0.0)
                         ? PermittivityModel::vacuum()
                         : PermittivityModel::constant(substrate_eps);
    return LayerStack::film_on_substrate(film, film_h, sub);
}

using PyMat = std::array<std::array<std::complex<double>, 3>, 3>;

PyMat to_py(const Mat3c& m) {
    PyMat out;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) out[i][j] = m(i, j);
    return out;
}

RateOptions options(double tol, bool quasi_static) {
    RateOptions ro;
    ro.tol = tol;
    ro.quasi_static = quasi_static;
    return ro;
}

} // namespace

PYBIND11_MODULE(_spincoh, m) {
    m.doc() = "spin-flip rates and spatial coherence above layered substrates";

    py::class_<QuadratureReport>(m, "QuadratureReport")
        .def_readonly("rel_error", &QuadratureReport::rel_error)
        .def_readonly("evaluations", &QuadratureReport::evaluations)
        .def_readonly("subdivisions", &QuadratureReport::subdivisions)
        .def_readonly("converged", &QuadratureReport::converged);

    py::class_<LayerStack>(m, "LayerStack")
        .def_static("half_space_drude",
                    [](double delta) {
                        return LayerStack::half_space(PermittivityModel::drude(delta));
                    },
                    py::arg("skin_depth"))
        .def_static("film", &make_stack, py::arg("skin_depth"), py::arg("film_thickness"),
                    py::arg("substrate_eps") = std::complex<double>(1.0, 0.0))
        .def_static("vacuum", &LayerStack::vacuum_only);

    m.def("larmor_frequency",
          [](double B0) { return larmor_frequency(B0); }, py::arg("B0"));
    m.def("thermal_photon_number",
          [](double omega, double T) { return thermal_photon_number(omega, T); },
          py::arg("omega"), py::arg("temperature"));
    m.def("spin_matrix_elements", &spin_matrix_elements, py::arg("F_i"), py::arg("mF_i"),
          py::arg("F_f"), py::arg("mF_f"), py::arg("S") = 0.5, py::arg("I") = 1.5);
    m.def("evaluate_permittivity",
          [](double skin_depth, double omega) {
              return evaluate_permittivity(PermittivityModel::drude(skin_depth), omega);
          },
          py::arg("skin_depth"), py::arg("omega"), "Drude permittivity 2ic^2/(omega^2 delta^2)");
    m.def("stack_reflection",
          [](const LayerStack& s, double omega, double K, const std::string& pol) {
              return stack_reflection(s, omega, K,
                                      pol == "te" ? Polarization::TE : Polarization::TM);
          },
          py::arg("stack"), py::arg("omega"), py::arg("K"), py::arg("polarization"));

    m.def("magnetic_kernel",
          [](double l, double d, double omega, const LayerStack& s, double tol,
             bool quasi_static) {
              KernelOptions ko;
              ko.tol = tol;
              ko.quasi_static = quasi_static;
              auto [H, rep] = magnetic_kernel(l, d, omega, s, ko);
              return py::make_tuple(to_py(H), rep);
          },
          py::arg("l"), py::arg("d"), py::arg("omega"), py::arg("stack"), py::arg("tol") = 1e-8,
          py::arg("quasi_static") = true);
    m.def("brute_force_kernel",
          [](double l, double d, double omega, const LayerStack& s, int panels) {
              BruteGrid g;
              g.panels = panels;
              return to_py(brute_force_kernel(l, d, omega, s, g));
          },
          py::arg("l"), py::arg("d"), py::arg("omega"), py::arg("stack"), py::arg("panels") = 40);

    m.def("gamma12_closed_form",
          [](double d, double omega, const LayerStack& s, double tol) {
              auto [g, rep] = gamma12_closed_form(d, omega, s, PhysicalConstants::codata2018(),
                                                  options(tol, true));
              return py::make_tuple(g, rep);
          },
          py::arg("d"), py::arg("omega"), py::arg("stack"), py::arg("tol") = 1e-8);
    m.def("gamma_general",
          [](double d, double omega, const LayerStack& s, const SpinVector& elems, double tol) {
              return gamma_general(d, omega, s, elems, PhysicalConstants::codata2018(),
                                   options(tol, true));
          },
          py::arg("d"), py::arg("omega"), py::arg("stack"),
          py::arg("spin_elements") = AtomTransition::default_rb87().spin_elements,
          py::arg("tol") = 1e-8);
    m.def("line_shift",
          [](double d, double omega, const LayerStack& s, const SpinVector& elems, double tol) {
              return line_shift(d, omega, s, elems, PhysicalConstants::codata2018(),
                                options(tol, true));
          },
          py::arg("d"), py::arg("omega"), py::arg("stack"),
          py::arg("spin_elements") = AtomTransition::default_rb87().spin_elements,
          py::arg("tol") = 1e-8);
    m.def("apply_thermal",
          [](double rate, double omega, double T) { return apply_thermal(rate, omega, T); },
          py::arg("rate"), py::arg("omega"), py::arg("temperature"));
    m.def("coherence_S",
          [](double l, double d, double omega, const LayerStack& s, const SpinVector& elems,
             double tol) {
              return coherence_S(l, d, omega, s, elems, PhysicalConstants::codata2018(),
                                 options(tol, true));
          },
          py::arg("l"), py::arg("d"), py::arg("omega"), py::arg("stack"),
          py::arg("spin_elements") = AtomTransition::default_rb87().spin_elements,
          py::arg("tol") = 1e-8);
    m.def("rho12",
          [](double t, double l, double d, double omega, const LayerStack& s,
             const SpinVector& elems, double T, double tol) {
              return rho12(t, l, d, omega, s, elems, T, PhysicalConstants::codata2018(),
                           options(tol, true));
          },
          py::arg("t"), py::arg("l"), py::arg("d"), py::arg("omega"), py::arg("stack"),
          py::arg("spin_elements") = AtomTransition::default_rb87().spin_elements,
          py::arg("temperature") = 0.0, py::arg("tol") = 1e-8);
    m.def("small_l_coefficient",
          [](double d, double omega, const LayerStack& s, double tol) {
              return small_l_coefficient(d, omega, s, PhysicalConstants::codata2018(),
                                         options(tol, true));
          },
          py::arg("d"), py::arg("omega"), py::arg("stack"), py::arg("tol") = 1e-8);
    m.def("short_time_decoherence", &short_time_decoherence, py::arg("t"), py::arg("l"),
          py::arg("d"), py::arg("gamma12"), py::arg("alpha"));
    m.def("half_coherence_length",
          [](double d, double omega, const LayerStack& s, const SpinVector& elems, double tol) {
              return half_coherence_length(d, omega, s, elems, PhysicalConstants::codata2018(),
                                           options(tol, true));
          },
          py::arg("d"), py::arg("omega"), py::arg("stack"),
          py::arg("spin_elements") = AtomTransition::default_rb87().spin_elements,
          py::arg("tol") = 1e-8);
    m.def("fit_asymptotic_exponent",
          [](const std::vector<double>& ds, const std::vector<double>& gs) {
              const auto fit = fit_asymptotic_exponent(ds, gs);
              return py::make_tuple(fit.exponent, fit.residual);
          },
          py::arg("distances"), py::arg("rates"));
    m.def("bessel_j", &bessel_j, py::arg("n"), py::arg("x"));
}
