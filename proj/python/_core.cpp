#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "hriesz/bilinear.hpp"
#include "hriesz/group.hpp"
#include "hriesz/io.hpp"
#include "hriesz/kernel.hpp"
#include "hriesz/laguerre.hpp"
#include "hriesz/spectral.hpp"
#include "hriesz/testfns.hpp"
#include "hriesz/transforms.hpp"
#include "hriesz/verify.hpp"

namespace py = pybind11;
using namespace hriesz;

namespace {

py::array_t<cplx> field_values(const FieldBase& f) {
    std::vector<py::ssize_t> shape;
    for (const auto& a : f.grid().axes()) shape.push_back(static_cast<py::ssize_t>(a.count));
    py::array_t<cplx> out(shape);
    std::copy(f.values().begin(), f.values().end(), out.mutable_data());
    return out;
}

SampledField field_from(int n, const Grid& g, py::array_t<cplx, py::array::c_style | py::array::forcecast> v) {
    if (static_cast<std::size_t>(v.size()) != g.size()) throw std::invalid_argument("value count does not match grid");
    return SampledField(n, g, std::vector<cplx>(v.data(), v.data() + v.size()));
}

HeisenbergPoint point(const std::vector<cplx>& z, double t) { return HeisenbergPoint(z, t); }

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Spectral calculus of the sublaplacian on H^n and bilinear Riesz means";

    py::class_<HeisenbergPoint>(m, "Point")
        .def(py::init(&point), py::arg("z"), py::arg("t"))
        .def_property_readonly("n", &HeisenbergPoint::n)
        .def_property_readonly("z", py::overload_cast<>(&HeisenbergPoint::z, py::const_))
        .def_property_readonly("t", &HeisenbergPoint::t)
        .def("__mul__", &group_mul)
        .def("__repr__", [](const HeisenbergPoint& p) {
            std::string s = "Point(z=[";
            for (int j = 0; j < p.n(); ++j)
                s += (j ? ", " : "") + py::repr(py::cast(p.z(j))).cast<std::string>();
            return s + "], t=" + std::to_string(p.t()) + ")";
        });
    m.def("group_mul", &group_mul);
    m.def("group_inv", &group_inv);
    m.def("dilate", &dilate, py::arg("r"), py::arg("x"));
    m.def("hnorm", &hnorm);

    m.def("laguerre_poly", &laguerre_poly, py::arg("k"), py::arg("a"), py::arg("x"));
    m.def("phi_radial", &phi_radial, py::arg("k"), py::arg("n"), py::arg("r2"),
          "phi_k as a function of |z|^2");

    py::class_<Axis>(m, "Axis")
        .def(py::init([](double lo, double hi, std::size_t count) { return Axis{lo, hi, count}; }))
        .def_readonly("min", &Axis::min)
        .def_readonly("max", &Axis::max)
        .def_readonly("count", &Axis::count)
        .def("node", &Axis::node)
        .def("__repr__", [](const Axis& a) {
            return "Axis(" + std::to_string(a.min) + ", " + std::to_string(a.max) + ", " + std::to_string(a.count) + ")";
        });
    m.def("lattice_axis", &lattice_axis, py::arg("h"), py::arg("count"));

    py::class_<Grid>(m, "Grid")
        .def(py::init<std::vector<Axis>>())
        .def_property_readonly("axes", &Grid::axes)
        .def_property_readonly("size", &Grid::size);

    py::class_<SampledField>(m, "Field")
        .def(py::init(&field_from), py::arg("n"), py::arg("grid"), py::arg("values"))
        .def_property_readonly("n", &SampledField::n)
        .def_property_readonly("grid", &SampledField::grid)
        .def_property_readonly("values", [](const SampledField& f) { return field_values(f); })
        .def("lp_norm", &SampledField::lp_norm)
        .def("l2_norm", &SampledField::l2_norm);

    m.def(
        "band_limited_field",
        [](int n, std::uint64_t seed, const Grid& g, double nu_lo, double nu_hi) {
            BandLimitedSpec sp;
            sp.nu_lo = nu_lo;
            sp.nu_hi = nu_hi;
            return random_band_limited(n, seed, sp).sample(g);
        },
        py::arg("n"), py::arg("seed"), py::arg("grid"), py::arg("nu_lo") = 1.2, py::arg("nu_hi") = 1.8);

    m.def(
        "plancherel",
        [](const SampledField& f, int kmax, double lo, double hi, std::size_t count) {
            auto r = plancherel_check(f, SpectralGrid::band(f.n(), kmax, lo, hi, count));
            return py::make_tuple(r.lhs, r.rhs);
        },
        py::arg("f"), py::arg("kmax") = 16, py::arg("lam_lo") = 0.02, py::arg("lam_hi") = 3.5, py::arg("count") = 48,
        "(lhs, rhs) of the Plancherel identity");
    m.def(
        "project", [](const SampledField& f, int k, double lambda) { return project(f, k, lambda); },
        py::arg("f"), py::arg("k"), py::arg("lam"));
    m.def(
        "p_lambda", [](const SampledField& f, double lambda, int kmax) { return p_lambda(f, lambda, kmax).field; },
        py::arg("f"), py::arg("lam"), py::arg("kmax") = 64);
    m.def("sublaplacian_fd", &sublaplacian_fd);
    m.def("write_field", &write_field);
    m.def("read_field", &read_field);

    m.def(
        "projection_kernel",
        [](int n, double lambda, const HeisenbergPoint& w, int kmax) {
            auto v = projection_kernel(n, lambda, w, kmax);
            return py::make_tuple(v.value, v.tail_estimate);
        },
        py::arg("n"), py::arg("lam"), py::arg("w"), py::arg("kmax") = 64);
    m.def(
        "bilinear_kernel",
        [](int n, double alpha, double R, const HeisenbergPoint& w1, const HeisenbergPoint& w2, int kmax,
           std::size_t u_nodes) {
            BilinearKernelOptions o;
            o.trunc.kmax = kmax;
            o.u_nodes = u_nodes;
            auto v = bilinear_kernel(n, alpha, R, w1, w2, o);
            return py::make_tuple(v.value, v.tail_estimate);
        },
        py::arg("n"), py::arg("alpha"), py::arg("R"), py::arg("w1"), py::arg("w2"), py::arg("kmax") = 64,
        py::arg("u_nodes") = 96, "(value, tail estimate) of S_R^alpha(w1, w2)");
    m.def(
        "riesz_means_kernel",
        [](int n, double t, int l, const HeisenbergPoint& w) { return riesz_means_kernel(n, t, l, w).value; },
        py::arg("n"), py::arg("t"), py::arg("l"), py::arg("w"));

    m.def(
        "apply_bilinear",
        [](const SampledField& f, const SampledField& g, double alpha, double R, std::size_t u_nodes, int kmax) {
            BilinearOptions o;
            o.u_nodes = u_nodes;
            o.kmax = kmax;
            return apply_bilinear(f, g, alpha, R, o);
        },
        py::arg("f"), py::arg("g"), py::arg("alpha"), py::arg("R") = 1.0, py::arg("u_nodes") = 32,
        py::arg("kmax") = 16);
    m.def(
        "dyadic_piece",
        [](const SampledField& f, const SampledField& g, int j, double alpha, double R) {
            return dyadic_piece(f, g, j, alpha, R);
        },
        py::arg("f"), py::arg("g"), py::arg("j"), py::arg("alpha"), py::arg("R") = 1.0);

    m.def(
        "gamma_decay",
        [](double alpha, double delta, int jmax, int K) { return gamma_decay_fit(alpha, delta, jmax, K).C; },
        py::arg("alpha") = 4.0, py::arg("delta") = 0.5, py::arg("jmax") = 6, py::arg("K") = 512,
        "per-j constants sup |gamma_{j,k}| (1+|k|)^{1+delta} 2^{j(alpha-delta)}");

    m.def(
        "smoothness_index",
        [](double p1, double p2, int n) {
            auto s = smoothness_index(p1, p2, n);
            return py::make_tuple(s.alpha, s.label);
        },
        py::arg("p1"), py::arg("p2"), py::arg("n") = 1, "(alpha, region label); pass float('inf') for p = inf");

    m.def("check_names", &check_names);
    m.def(
        "run_check",
        [](const std::string& name, std::uint64_t seed) {
            VerifyOptions o;
            o.seed = seed;
            CheckResult r;
            {
                py::gil_scoped_release release;
                r = run_check(name, o);
            }
            py::dict d;
            d["name"] = r.name;
            d["pass"] = r.pass;
            d["measured"] = r.measured;
            d["tolerance"] = r.tolerance;
            d["seconds"] = r.seconds;
            py::dict values;
            for (const auto& [k, v] : r.values) values[py::str(k)] = v;
            d["values"] = values;
            d["notes"] = r.notes;
            return d;
        },
        py::arg("name"), py::arg("seed") = 7);
}
