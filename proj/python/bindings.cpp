#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "secopt/df_multi.hpp"
#include "secopt/errors.hpp"
#include "secopt/experiments.hpp"
#include "secopt/json_io.hpp"
#include "secopt/sdp.hpp"
#include "secopt/version.hpp"

namespace py = pybind11;
using namespace secopt;
namespace ex = secopt::experiments;

namespace {

ex::Scheme scheme_arg(const std::string& s) {
  if (auto v = ex::parse_scheme(s)) return *v;
  throw ContractError("unknown scheme '" + s + "'");
}

ex::Metric metric_arg(const std::string& s) {
  if (auto v = ex::parse_metric(s)) return *v;
  throw ContractError("unknown objective '" + s + "'");
}

py::dict trace_to_dict(const AltIterTrace& t) {
  py::list steps;
  for (const auto& s : t.steps) steps.append(py::make_tuple(s.first, s.z, s.objective, s.bound));
  py::dict d;
  d["seed"] = t.seed;
  d["steps"] = steps;
  d["converged"] = t.converged;
  d["iterations"] = t.iterations;
  return d;
}

}  // namespace

PYBIND11_MODULE(_secopt, m) {
  m.doc() = "Relay beamforming for secrecy rate and transmit power";
  m.attr("__version__") = std::string(kVersion);

  auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<ContractError>(m, "ContractError", base.ptr());
  py::register_exception<DegeneracyError>(m, "DegeneracyError", base.ptr());
  py::register_exception<NumericalError>(m, "NumericalError", base.ptr());
  py::register_exception<InfeasibleError>(m, "InfeasibleError", base.ptr());
  py::register_exception<InsufficientDofError>(m, "InsufficientDofError", base.ptr());
  py::register_exception<SchemaError>(m, "SchemaError", base.ptr());
  py::register_exception<InternalError>(m, "InternalError", base.ptr());

  py::class_<Scenario>(m, "Scenario")
      .def(py::init<>())
      .def_readwrite("h0", &Scenario::h0)
      .def_readwrite("h", &Scenario::h)
      .def_readwrite("g0", &Scenario::g0)
      .def_readwrite("g", &Scenario::g)
      .def_readwrite("a", &Scenario::a)
      .def_readwrite("sigma2", &Scenario::sigma2)
      .def_readwrite("p0", &Scenario::p0)
      .def_readwrite("p0_min", &Scenario::p0_min)
      .def_readwrite("rs0", &Scenario::rs0)
      .def_property_readonly("n_relays", &Scenario::n_relays)
      .def_property_readonly("n_eaves", &Scenario::n_eaves)
      .def("validate", &Scenario::validate)
      .def_static("from_json",
                  [](const std::string& text) { return scenario_from_json(Json::parse(text)); })
      .def("to_json", [](const Scenario& sc) { return scenario_to_json(sc).dump(); });

  py::class_<SchemeSolution>(m, "SchemeSolution")
      .def_readonly("ps", &SchemeSolution::ps)
      .def_readonly("w", &SchemeSolution::w)
      .def_readonly("secrecy_rate", &SchemeSolution::secrecy_rate)
      .def_readonly("total_power", &SchemeSolution::total_power)
      .def_readonly("iterations", &SchemeSolution::iterations)
      .def_readonly("converged", &SchemeSolution::converged)
      .def_property_readonly("branch",
                             [](const SchemeSolution& s) { return std::string(to_string(s.branch)); })
      .def_readonly("diagnostics", &SchemeSolution::diagnostics)
      .def_readonly("notes", &SchemeSolution::notes)
      .def_property_readonly("traces",
                             [](const SchemeSolution& s) {
                               py::list out;
                               for (const auto& t : s.traces) out.append(trace_to_dict(t));
                               return out;
                             })
      .def("to_json", [](const SchemeSolution& s) { return solution_to_json(s).dump(); });

  m.def(
      "solve",
      [](const Scenario& sc, const std::string& scheme, const std::string& objective) {
        const auto s = scheme_arg(scheme);
        const auto o = metric_arg(objective);
        py::gil_scoped_release release;
        return ex::solve_scheme(s, o, sc);
      },
      py::arg("scenario"), py::arg("scheme"), py::arg("objective") = "max-rate",
      "Solve one scenario. Raises InfeasibleError when the target cannot be met.");

  m.def(
      "df_rates",
      [](const Scenario& sc, double ps, const CVec& w) {
        const LinkRates r = df_rates(sc, ps, w);
        return py::make_tuple(r.rd, r.re);
      },
      py::arg("scenario"), py::arg("ps"), py::arg("w"));
  m.def(
      "cj_rates",
      [](const Scenario& sc, double ps, const CVec& w) {
        const LinkRates r = cj_rates(sc, ps, w);
        return py::make_tuple(r.rd, r.re);
      },
      py::arg("scenario"), py::arg("ps"), py::arg("w"));
  m.def("direct_rate", &direct_transmission_rate, py::arg("scenario"));
  m.def("dbm_to_watt", &dbm_to_watt);
  m.def("watt_to_dbm", &watt_to_dbm);

  m.def(
      "gen_channels",
      [](double d_sd, std::vector<double> d_se, int n_relays, int n_eaves, double d_sr,
         double c, std::uint64_t seed, std::uint64_t trial, double p0_dbm, double sigma2_dbm,
         double rs0) {
        ex::Geometry g;
        g.d_sd = d_sd;
        g.d_se = std::move(d_se);
        g.n_relays = n_relays;
        g.n_eaves = n_eaves;
        g.d_sr = d_sr;
        ex::LosParams los;
        los.c = c;
        los.seed = seed;
        ex::PowerParams pw;
        pw.p0_dbm = p0_dbm;
        pw.sigma2_dbm = sigma2_dbm;
        pw.rs0 = rs0;
        return ex::gen_channels(g, los, pw, trial);
      },
      py::arg("d_sd") = 50.0, py::arg("d_se") = std::vector<double>{50.0},
      py::arg("n_relays") = 10, py::arg("n_eaves") = 1, py::arg("d_sr") = 5.0,
      py::arg("c") = 3.5, py::arg("seed") = 1, py::arg("trial") = 0, py::arg("p0_dbm") = 30.0,
      py::arg("sigma2_dbm") = kDefaultSigma2Dbm, py::arg("rs0") = 1.0);

  m.def(
      "run_sweep_csv",
      [](const std::string& config, int threads) {
        const ex::SweepSpec spec = ex::sweep_from_json(Json::parse(config));
        py::gil_scoped_release release;
        return ex::to_csv(ex::run_sweep(spec, threads));
      },
      py::arg("config"), py::arg("threads") = 0,
      "Run a sweep given its JSON configuration text and return the CSV.");

  m.def(
      "solve_sdp",
      [](const std::vector<CMat>& a) {
        sdp::SdpResult r;
        {
          py::gil_scoped_release release;
          r = sdp::solve(a);
        }
        py::dict d;
        d["z"] = r.z_opt;
        d["objective"] = r.objective;
        d["duals"] = r.duals;
        d["gap"] = r.gap;
        d["iterations"] = r.iterations;
        d["status"] = std::string(sdp::to_string(r.status));
        return d;
      },
      py::arg("a"), "max Tr(Z) subject to Tr(A_j Z) <= 1 and Z PSD.");

  m.def(
      "upper_envelope",
      [](const std::vector<std::pair<double, double>>& lines, double lo, double hi) {
        std::vector<AffineLine> ls;
        for (const auto& [b, s] : lines) ls.push_back({b, s});
        const PolygonalEnvelope env = upper_envelope(ls, lo, hi);
        return py::make_tuple(env.breakpoints, env.active_index);
      },
      py::arg("lines"), py::arg("lo"), py::arg("hi"),
      "Lines are (intercept, slope) pairs. Returns (breakpoints, active line per piece).");
}
