#include "secopt/json_io.hpp"

#include <cmath>

#include "secopt/errors.hpp"

namespace secopt {

namespace {

Cplx parse_complex(const Json& j, const std::string& path) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw SchemaError(path, "expected a complex number [re, im]");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

CVec parse_cvec(const Json& j, const std::string& path) {
  if (!j.is_array()) throw SchemaError(path, "expected an array of [re, im] pairs");
  CVec v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    v[static_cast<Eigen::Index>(i)] = parse_complex(j[i], path + "[" + std::to_string(i) + "]");
  }
  return v;
}

const Json& require(const Json& j, const char* key) {
  if (!j.contains(key)) throw SchemaError(key, "missing required field");
  return j.at(key);
}

double parse_number(const Json& j, const std::string& path) {
  if (!j.is_number()) throw SchemaError(path, "expected a number");
  const double x = j.get<double>();
  if (!std::isfinite(x)) throw SchemaError(path, "expected a finite number");
  return x;
}

}  // namespace

Json complex_to_json(Cplx c) { return Json::array({c.real(), c.imag()}); }

Json cvec_to_json(const CVec& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(complex_to_json(v[i]));
  return out;
}

Scenario scenario_from_json(const Json& j) {
  if (!j.is_object()) throw SchemaError("<root>", "expected a JSON object");
  Scenario sc;
  sc.h0 = parse_complex(require(j, "h0"), "h0");
  sc.h = parse_cvec(require(j, "h"), "h");

  const Json& g0 = require(j, "g0");
  if (!g0.is_array()) throw SchemaError("g0", "expected an array of [re, im] pairs");
  for (std::size_t k = 0; k < g0.size(); ++k) {
    sc.g0.push_back(parse_complex(g0[k], "g0[" + std::to_string(k) + "]"));
  }
  const Json& g = require(j, "g");
  if (!g.is_array()) throw SchemaError("g", "expected an array of gain vectors");
  for (std::size_t k = 0; k < g.size(); ++k) {
    const std::string path = "g[" + std::to_string(k) + "]";
    sc.g.push_back(parse_cvec(g[k], path));
    if (sc.g.back().size() != sc.h.size()) {
      throw SchemaError(path, "length differs from h");
    }
  }
  if (sc.g.size() != sc.g0.size()) throw SchemaError("g", "length differs from g0");
  if (sc.g.empty()) throw SchemaError("g", "need at least one eavesdropper");
  if (sc.h.size() == 0) throw SchemaError("h", "need at least one relay");
  if (j.contains("a")) {
    sc.a = parse_cvec(j.at("a"), "a");
    if (sc.a.size() != sc.h.size()) throw SchemaError("a", "length differs from h");
  }

  sc.sigma2 = parse_number(require(j, "sigma2"), "sigma2");
  if (!(sc.sigma2 > 0.0)) throw SchemaError("sigma2", "must be positive");
  sc.p0 = parse_number(require(j, "p0"), "p0");
  if (!(sc.p0 > 0.0)) throw SchemaError("p0", "must be positive");
  sc.p0_min = j.contains("p0_min") ? parse_number(j.at("p0_min"), "p0_min")
                                   : default_p0_min(sc.a, sc.sigma2, sc.p0);
  if (!(sc.p0_min >= 0.0 && sc.p0_min <= sc.p0)) {
    throw SchemaError("p0_min", "must lie in [0, p0]");
  }
  sc.rs0 = j.contains("rs0") ? parse_number(j.at("rs0"), "rs0") : 0.0;
  if (sc.rs0 < 0.0) throw SchemaError("rs0", "must be nonnegative");
  return sc;
}

Json scenario_to_json(const Scenario& sc) {
  Json j;
  j["h0"] = complex_to_json(sc.h0);
  j["h"] = cvec_to_json(sc.h);
  j["g0"] = Json::array();
  for (const Cplx& c : sc.g0) j["g0"].push_back(complex_to_json(c));
  j["g"] = Json::array();
  for (const CVec& v : sc.g) j["g"].push_back(cvec_to_json(v));
  if (sc.a.size() > 0) j["a"] = cvec_to_json(sc.a);
  j["sigma2"] = sc.sigma2;
  j["p0"] = sc.p0;
  j["p0_min"] = sc.p0_min;
  j["rs0"] = sc.rs0;
  return j;
}

Json solution_to_json(const SchemeSolution& sol, bool with_traces) {
  Json j;
  j["ps"] = sol.ps;
  j["w"] = cvec_to_json(sol.w);
  j["secrecy_rate"] = sol.secrecy_rate;
  j["total_power"] = sol.total_power;
  j["total_power_dbm"] = sol.total_power > 0.0 ? Json(watt_to_dbm(sol.total_power)) : Json();
  j["iterations"] = sol.iterations;
  j["converged"] = sol.converged;
  j["branch"] = std::string(to_string(sol.branch));
  j["diagnostics"] = Json::object();
  for (const auto& [k, v] : sol.diagnostics) {
    j["diagnostics"][k] = std::isfinite(v) ? Json(v) : Json();
  }
  j["notes"] = sol.notes;
  if (with_traces) {
    j["traces"] = Json::array();
    for (const AltIterTrace& t : sol.traces) {
      Json steps = Json::array();
      for (const TraceEntry& s : t.steps) {
        steps.push_back({s.first, s.z, s.objective,
                         std::isfinite(s.bound) ? Json(s.bound) : Json()});
      }
      j["traces"].push_back({{"seed", t.seed},
                             {"converged", t.converged},
                             {"iterations", t.iterations},
                             {"steps", steps}});
    }
  }
  return j;
}

}  // namespace secopt
