#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "wdl/analysis.hpp"
#include "wdl/arith.hpp"
#include "wdl/bessel.hpp"
#include "wdl/cache_io.hpp"
#include "wdl/error.hpp"
#include "wdl/exactsum.hpp"
#include "wdl/version.hpp"
#include "wdl/voronoi.hpp"

namespace py = pybind11;
using namespace pybind11::literals;

PYBIND11_MODULE(_core, m) {
    m.doc() = "Exact evaluation and checks for weighted divisor sums";
    m.attr("__version__") = wdl::version;

    py::register_exception<wdl::DomainError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<wdl::RangeError>(m, "RangeError", PyExc_IndexError);
    py::register_exception<wdl::ResourceError>(m, "ResourceError", PyExc_MemoryError);
    py::register_exception<wdl::NumericalError>(m, "NumericalError", PyExc_ArithmeticError);

    py::enum_<wdl::WeightKind>(m, "WeightKind")
        .value("cos_sin", wdl::WeightKind::cos_sin)
        .value("sin_sin", wdl::WeightKind::sin_sin)
        .value("cos_cos", wdl::WeightKind::cos_cos);

    py::class_<wdl::Params>(m, "Params")
        .def(py::init([](std::int64_t q1, std::int64_t a1, std::int64_t q2, std::int64_t a2, wdl::WeightKind kind) {
                 wdl::Params p{a1, q1, a2, q2, kind};
                 wdl::validate(p);
                 return p;
             }),
             "q1"_a = 3, "a1"_a = 1, "q2"_a = 4, "a2"_a = 1, "kind"_a = wdl::WeightKind::cos_sin)
        .def_readwrite("q1", &wdl::Params::q1)
        .def_readwrite("a1", &wdl::Params::a1)
        .def_readwrite("q2", &wdl::Params::q2)
        .def_readwrite("a2", &wdl::Params::a2)
        .def_readwrite("kind", &wdl::Params::kind)
        .def("__eq__", [](const wdl::Params& a, const wdl::Params& b) { return a == b; })
        .def("__repr__", [](const wdl::Params& p) {
            return "Params(q1=" + std::to_string(p.q1) + ", a1=" + std::to_string(p.a1) + ", q2=" +
                   std::to_string(p.q2) + ", a2=" + std::to_string(p.a2) + ", kind=" +
                   std::string(wdl::to_string(p.kind)) + ")";
        });
    m.def("theorem_warnings", &wdl::theorem_warnings, "params"_a);

    py::class_<wdl::JumpTable>(m, "JumpTable")
        .def_property_readonly("params", &wdl::JumpTable::params)
        .def_property_readonly("max_index", &wdl::JumpTable::max_index)
        .def("jump", [](const wdl::JumpTable& t, std::uint64_t n) {
            if (n > t.max_index()) throw wdl::RangeError("index above table size");
            return t.jump(n);
        })
        .def("prefix", [](const wdl::JumpTable& t, std::uint64_t n) {
            if (n > t.max_index()) throw wdl::RangeError("index above table size");
            return t.prefix(n);
        })
        .def("__call__", [](const wdl::JumpTable& t, double x) { return wdl::s_eval(x, t); }, "x"_a);

    m.def("sieve", [](std::uint64_t x_max, const wdl::Params& p, unsigned threads) {
              wdl::SieveOptions o;
              o.threads = threads;
              py::gil_scoped_release nogil;
              return wdl::sieve_jumps(x_max, p, o);
          },
          "x_max"_a, "params"_a, "threads"_a = 1);
    m.def("write_cache", &wdl::write_cache, "path"_a, "table"_a);
    m.def("read_cache", &wdl::read_cache, "path"_a);

    m.def("residue_divisor_count", &wdl::residue_divisor_count, "n"_a, "b1"_a, "b2"_a, "params"_a);
    m.def("delta_d2", &wdl::delta_d2, "n"_a, "params"_a);
    m.def("delta_d2_table", &wdl::delta_d2_table, "n_max"_a, "params"_a);
    m.def("n0_index", &wdl::n0_index, "params"_a);

    m.def("s_eval", &wdl::s_eval, "x"_a, "table"_a);
    m.def("s_star", &wdl::s_star, "t"_a, "table"_a, "f_coeff"_a = 0.0);
    m.def("plus_minus", [](double s) {
        const auto pm = wdl::plus_minus(s);
        return py::make_tuple(pm.plus, pm.minus);
    });
    m.def("integrate_power", [](const wdl::JumpTable& t, double a, double b, int k, bool normalized) {
              return wdl::integrate_power(t, a, b, k, normalized ? wdl::Domain::normalized : wdl::Domain::raw);
          },
          "table"_a, "a"_a, "b"_a, "k"_a, "normalized"_a = false);

    py::class_<wdl::TruncationParams>(m, "TruncationParams")
        .def_readonly("T", &wdl::TruncationParams::T)
        .def_readonly("y", &wdl::TruncationParams::y)
        .def_readonly("H", &wdl::TruncationParams::H)
        .def_readonly("J", &wdl::TruncationParams::J)
        .def_readwrite("cap", &wdl::TruncationParams::cap)
        .def_readonly("warnings", &wdl::TruncationParams::warnings);
    m.def("derive_truncation", [](double T, std::int64_t q1, std::int64_t q2, const std::string& mode,
                                  std::optional<double> h) {
              wdl::TruncationMode md;
              if (mode == "sign_lemma") md = wdl::TruncationMode::sign_lemma;
              else if (mode == "msq_lemma") md = wdl::TruncationMode::msq_lemma;
              else throw wdl::DomainError("mode must be 'sign_lemma' or 'msq_lemma'");
              return wdl::derive_truncation(T, q1, q2, md, h);
          },
          "T"_a, "q1"_a, "q2"_a, "mode"_a = "sign_lemma", "h"_a = py::none());
    m.def("r0_eval", &wdl::r0_eval, "x"_a, "trunc"_a, "params"_a);
    m.def("voronoi_approx", &wdl::voronoi_approx, "x"_a, "trunc"_a, "params"_a);
    m.def("j1", &wdl::j1, "z"_a);
    m.def("bessel_partial_sums", [](double x, const wdl::Params& p, std::vector<double> radii) {
              const auto cfg = wdl::BesselSeriesConfig::from_params(p, 1.0);
              py::list out;
              for (const auto& s : wdl::bessel_partial_sums(x, cfg.theta1, cfg.theta2, std::move(radii))) {
                  out.append(py::dict("radius"_a = s.radius, "value"_a = s.value, "terms"_a = s.terms,
                                      "oscillation"_a = s.oscillation));
              }
              return out;
          },
          "x"_a, "params"_a, "radii"_a);

    m.def("scan_sign_changes", [](double lo, double hi, const wdl::JumpTable& t, double c1, double f_coeff) {
              wdl::ScanOptions o;
              o.c1 = c1;
              o.f_coeff = f_coeff;
              const auto r = wdl::scan_sign_changes(lo, hi, t, o);
              return py::dict("crossings"_a = r.crossings, "max_gap"_a = r.max_gap, "gap_ratio"_a = r.gap_ratio,
                              "witness_plus"_a = r.witness_plus, "witness_minus"_a = r.witness_minus);
          },
          "t_lo"_a, "t_hi"_a, "table"_a, "c1"_a = 0.0, "f_coeff"_a = 0.0);
    m.def("exceedance_measure", [](double T, const wdl::JumpTable& t, double c5) {
              const auto r = wdl::exceedance_measure(T, t, c5);
              return py::make_tuple(r.plus, r.minus);
          },
          "T"_a, "table"_a, "c5"_a = wdl::default_c5);
    m.def("single_sign_runs", [](double T, const wdl::JumpTable& t, double c5, double L) {
              const auto r = wdl::single_sign_runs(T, t, c5, L);
              return py::dict("plus"_a = r.plus, "minus"_a = r.minus, "longest_plus"_a = r.longest_plus,
                              "longest_minus"_a = r.longest_minus);
          },
          "T"_a, "table"_a, "c5"_a, "L"_a);
    m.def("kernel_test", [](double t, const wdl::JumpTable& table, double alpha, int zeta, double f_coeff) {
              const auto spec = wdl::make_kernel_spec(table.params(), alpha, zeta);
              const auto r = wdl::kernel_test(t, spec, table, f_coeff);
              return py::dict("lhs"_a = r.lhs, "predicted"_a = r.predicted, "residual"_a = r.residual,
                              "pieces"_a = r.pieces, "n0"_a = spec.n0);
          },
          "t"_a, "table"_a, "alpha"_a = wdl::default_alpha, "zeta"_a = 1, "f_coeff"_a = 0.0);
    m.def("short_interval_msq", [](double T, double h, const wdl::JumpTable& t) {
              return wdl::short_interval_msq(T, h, t).value;
          },
          "T"_a, "h"_a, "table"_a);
    m.def("max_increment_msq", [](double T, double H0, const wdl::JumpTable& t) {
              const auto r = wdl::max_increment_msq(T, H0, t);
              return py::make_tuple(r.plus, r.minus);
          },
          "T"_a, "H0"_a, "table"_a);
    m.def("moment", [](double T, int k, const wdl::JumpTable& t, std::optional<double> c_k) {
              const auto r = wdl::moment(T, k, t, c_k);
              return py::dict("integral"_a = r.integral, "c_hat"_a = r.c_hat,
                              "first_moment_ratio"_a = r.first_moment_ratio, "f_k"_a = r.f_k);
          },
          "T"_a, "k"_a, "table"_a, "c_k"_a = py::none());
    m.def("omega_witness", [](double T, int k, double c_k, const wdl::JumpTable& t, double c4, double c5) {
              wdl::OmegaOptions o;
              o.c4 = c4;
              o.c5 = c5;
              const auto w = wdl::omega_witness(T, k, c_k, t, o);
              return py::dict("found"_a = w.found, "delta"_a = w.delta, "t"_a = w.t, "H0"_a = w.H0,
                              "increment"_a = w.increment, "f_increment"_a = w.f_increment,
                              "c_star"_a = w.c_star, "lower_bound"_a = w.lower_bound,
                              "inequality_holds"_a = w.inequality_holds);
          },
          "T"_a, "k"_a, "c_k"_a, "table"_a, "c4"_a = wdl::default_c4, "c5"_a = wdl::default_c5);
}
