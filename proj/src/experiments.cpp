#include "secopt/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <numbers>
#include <thread>

#include "secopt/cj_opt.hpp"
#include "secopt/df_multi.hpp"
#include "secopt/df_opt.hpp"
#include "secopt/errors.hpp"
#include "secopt/hash.hpp"
#include "secopt/version.hpp"

namespace secopt::experiments {

double Geometry::eave_distance(int j) const {
  return d_se.size() == 1 ? d_se.front() : d_se.at(static_cast<std::size_t>(j));
}

void Geometry::validate() const {
  if (n_relays < 1) throw ContractError("geometry: n_relays must be >= 1");
  if (n_eaves < 1) throw ContractError("geometry: n_eaves must be >= 1");
  if (d_se.empty()) throw ContractError("geometry: d_se is empty");
  if (d_se.size() != 1 && d_se.size() != static_cast<std::size_t>(n_eaves)) {
    throw ContractError("geometry: d_se needs one entry or one per eavesdropper");
  }
  auto positive = [](double d, const char* what) {
    if (!(d > 0.0) || !std::isfinite(d)) {
      throw ContractError(std::string("geometry: ") + what + " distance must be positive");
    }
  };
  positive(d_sr, "source-relay");
  positive(d_sd, "source-destination");
  positive(std::abs(d_sd - d_sr), "relay-destination");
  for (int j = 0; j < n_eaves; ++j) {
    positive(eave_distance(j), "source-eavesdropper");
    positive(std::abs(eave_distance(j) - d_sr), "relay-eavesdropper");
  }
}

double edge_phase(std::uint64_t seed, std::uint64_t trial, Edge kind, int eave, int relay) {
  const std::uint64_t key = (static_cast<std::uint64_t>(kind) << 48) |
                            (static_cast<std::uint64_t>(eave) << 24) |
                            static_cast<std::uint64_t>(relay);
  const std::uint64_t x = mix64(mix64(mix64(seed) ^ trial) ^ key);
  return 2.0 * std::numbers::pi * (static_cast<double>(x >> 11) * 0x1.0p-53);
}

Scenario gen_channels(const Geometry& geom, const LosParams& los, const PowerParams& pw,
                      std::uint64_t trial) {
  geom.validate();
  if (!(los.c > 0.0)) throw ContractError("gen_channels: path-loss exponent must be positive");
  auto gain = [&](double d, Edge kind, int eave, int relay) {
    const double mag = los.rho0 * std::pow(d, -0.5 * los.c);
    return std::polar(mag, edge_phase(los.seed, trial, kind, eave, relay));
  };
  const int n = geom.n_relays;
  Scenario sc;
  sc.h0 = gain(geom.d_sd, Edge::kSourceDest, 0, 0);
  sc.h.resize(n);
  sc.a.resize(n);
  const double d_rd = std::abs(geom.d_sd - geom.d_sr);
  for (int i = 0; i < n; ++i) {
    sc.h[i] = gain(d_rd, Edge::kRelayDest, 0, i);
    sc.a[i] = gain(geom.d_sr, Edge::kSourceRelay, 0, i);
  }
  for (int j = 0; j < geom.n_eaves; ++j) {
    const double d_se = geom.eave_distance(j);
    sc.g0.push_back(gain(d_se, Edge::kSourceEave, j, 0));
    CVec g(n);
    for (int i = 0; i < n; ++i) g[i] = gain(std::abs(d_se - geom.d_sr), Edge::kRelayEave, j, i);
    sc.g.push_back(g);
  }
  sc.sigma2 = dbm_to_watt(pw.sigma2_dbm);
  sc.p0 = dbm_to_watt(pw.p0_dbm);
  sc.p0_min = pw.p0_min_w ? *pw.p0_min_w : default_p0_min(sc.a, sc.sigma2, sc.p0);
  sc.rs0 = pw.rs0;
  sc.validate();
  return sc;
}

std::string_view to_string(Axis a) {
  switch (a) {
    case Axis::kDsd: return "d_sd";
    case Axis::kDse: return "d_se";
    case Axis::kNEaves: return "n_eaves";
  }
  return "unknown";
}

std::string_view to_string(Metric m) {
  return m == Metric::kMaxRate ? "max-rate" : "min-power";
}

std::string_view to_string(Scheme s) {
  switch (s) {
    case Scheme::kDf: return "df";
    case Scheme::kDfMulti: return "df-multi";
    case Scheme::kDfSub: return "df-sub";
    case Scheme::kCj: return "cj";
    case Scheme::kCjSub: return "cj-sub";
    case Scheme::kDirect: return "direct";
  }
  return "unknown";
}

std::optional<Scheme> parse_scheme(std::string_view s) {
  for (Scheme c : {Scheme::kDf, Scheme::kDfMulti, Scheme::kDfSub, Scheme::kCj, Scheme::kCjSub,
                   Scheme::kDirect}) {
    if (to_string(c) == s) return c;
  }
  return std::nullopt;
}

std::optional<Metric> parse_metric(std::string_view s) {
  if (s == "max-rate") return Metric::kMaxRate;
  if (s == "min-power") return Metric::kMinPower;
  return std::nullopt;
}

Geometry SweepSpec::geometry_at(double v) const {
  Geometry g = geometry;
  switch (axis) {
    case Axis::kDsd: g.d_sd = v; break;
    case Axis::kDse: g.d_se = {v}; break;
    case Axis::kNEaves: g.n_eaves = static_cast<int>(std::lround(v)); break;
  }
  return g;
}

void SweepSpec::validate() const {
  if (axis_values.empty()) throw SchemaError("axis", "no axis values");
  if (schemes.empty()) throw SchemaError("schemes", "no schemes selected");
  if (trials < 1) throw SchemaError("trials", "must be at least 1");
  for (double v : axis_values) {
    if (axis == Axis::kNEaves && (v < 1 || std::abs(v - std::round(v)) > 1e-9)) {
      throw SchemaError("axis.values", "eavesdropper counts must be positive integers");
    }
    const Geometry g = geometry_at(v);
    try {
      g.validate();
    } catch (const ContractError& e) {
      throw SchemaError("geometry", e.what());
    }
    for (Scheme s : schemes) {
      const bool single = g.n_eaves == 1;
      if ((s == Scheme::kCj || s == Scheme::kCjSub) && (!single || g.n_relays < 2)) {
        throw SchemaError("schemes", std::string(to_string(s)) +
                                         " needs one eavesdropper and at least two relays");
      }
      if (metric == Metric::kMinPower) {
        if (s == Scheme::kDfMulti || s == Scheme::kDfSub) {
          throw SchemaError("schemes", std::string(to_string(s)) + " has no min-power variant");
        }
        if (s == Scheme::kDf && !single) {
          throw SchemaError("schemes", "df min-power needs one eavesdropper");
        }
      }
    }
  }
}

namespace {

const Json& field(const Json& j, const char* key, const std::string& path) {
  if (!j.contains(key)) throw SchemaError(path + key, "missing required field");
  return j.at(key);
}

double number(const Json& j, const std::string& path) {
  if (!j.is_number() || !std::isfinite(j.get<double>())) {
    throw SchemaError(path, "expected a finite number");
  }
  return j.get<double>();
}

int integer(const Json& j, const std::string& path) {
  if (!j.is_number_integer()) throw SchemaError(path, "expected an integer");
  return j.get<int>();
}

double opt_number(const Json& j, const char* key, double fallback, const std::string& path) {
  return j.contains(key) ? number(j.at(key), path + key) : fallback;
}

}  // namespace

SweepSpec sweep_from_json(const Json& j) {
  if (!j.is_object()) throw SchemaError("<root>", "expected a JSON object");
  SweepSpec s;
  if (j.contains("name")) {
    if (!j["name"].is_string()) throw SchemaError("name", "expected a string");
    s.name = j["name"].get<std::string>();
  }

  const Json& metric = field(j, "metric", "");
  if (!metric.is_string() || !parse_metric(metric.get<std::string>())) {
    throw SchemaError("metric", "expected \"max-rate\" or \"min-power\"");
  }
  s.metric = *parse_metric(metric.get<std::string>());

  const Json& axis = field(j, "axis", "");
  if (!axis.is_object()) throw SchemaError("axis", "expected an object");
  const Json& axis_name = field(axis, "name", "axis.");
  const std::string an = axis_name.is_string() ? axis_name.get<std::string>() : "";
  if (an == "d_sd") {
    s.axis = Axis::kDsd;
  } else if (an == "d_se") {
    s.axis = Axis::kDse;
  } else if (an == "n_eaves") {
    s.axis = Axis::kNEaves;
  } else {
    throw SchemaError("axis.name", "expected d_sd, d_se or n_eaves");
  }
  if (axis.contains("values")) {
    const Json& vals = axis["values"];
    if (!vals.is_array()) throw SchemaError("axis.values", "expected an array");
    for (std::size_t k = 0; k < vals.size(); ++k) {
      s.axis_values.push_back(number(vals[k], "axis.values[" + std::to_string(k) + "]"));
    }
  } else {
    const double start = number(field(axis, "start", "axis."), "axis.start");
    const double stop = number(field(axis, "stop", "axis."), "axis.stop");
    const double step = number(field(axis, "step", "axis."), "axis.step");
    if (!(step > 0.0) || stop < start) throw SchemaError("axis.step", "empty or invalid range");
    const auto count = static_cast<long>(std::floor((stop - start) / step + 1e-9)) + 1;
    if (count > 100000) throw SchemaError("axis.step", "too many points");
    for (long k = 0; k < count; ++k) s.axis_values.push_back(start + static_cast<double>(k) * step);
  }

  const Json& schemes = field(j, "schemes", "");
  if (!schemes.is_array()) throw SchemaError("schemes", "expected an array of scheme names");
  for (std::size_t k = 0; k < schemes.size(); ++k) {
    const std::string path = "schemes[" + std::to_string(k) + "]";
    if (!schemes[k].is_string() || !parse_scheme(schemes[k].get<std::string>())) {
      throw SchemaError(path, "unknown scheme");
    }
    s.schemes.push_back(*parse_scheme(schemes[k].get<std::string>()));
  }

  if (j.contains("geometry")) {
    const Json& g = j["geometry"];
    if (!g.is_object()) throw SchemaError("geometry", "expected an object");
    s.geometry.d_sr = opt_number(g, "d_sr", s.geometry.d_sr, "geometry.");
    s.geometry.d_sd = opt_number(g, "d_sd", s.geometry.d_sd, "geometry.");
    if (g.contains("d_se")) {
      const Json& d = g["d_se"];
      s.geometry.d_se.clear();
      if (d.is_array()) {
        for (std::size_t k = 0; k < d.size(); ++k) {
          s.geometry.d_se.push_back(number(d[k], "geometry.d_se[" + std::to_string(k) + "]"));
        }
      } else {
        s.geometry.d_se.push_back(number(d, "geometry.d_se"));
      }
    }
    if (g.contains("n_relays")) s.geometry.n_relays = integer(g["n_relays"], "geometry.n_relays");
    if (g.contains("n_eaves")) s.geometry.n_eaves = integer(g["n_eaves"], "geometry.n_eaves");
  }
  if (j.contains("channel")) {
    const Json& c = j["channel"];
    if (!c.is_object()) throw SchemaError("channel", "expected an object");
    s.los.rho0 = opt_number(c, "rho0", s.los.rho0, "channel.");
    s.los.c = opt_number(c, "path_loss_exponent", s.los.c, "channel.");
    if (!(s.los.c > 0.0)) throw SchemaError("channel.path_loss_exponent", "must be positive");
  }
  if (j.contains("seed")) {
    if (!j["seed"].is_number_unsigned()) throw SchemaError("seed", "expected a nonnegative integer");
    s.los.seed = j["seed"].get<std::uint64_t>();
  }
  s.power.p0_dbm = opt_number(j, "p0_dbm", s.power.p0_dbm, "");
  s.power.sigma2_dbm = opt_number(j, "sigma2_dbm", s.power.sigma2_dbm, "");
  s.power.rs0 = opt_number(j, "rs0", s.power.rs0, "");
  if (s.power.rs0 < 0.0) throw SchemaError("rs0", "must be nonnegative");
  if (j.contains("p0_min_w")) s.power.p0_min_w = number(j["p0_min_w"], "p0_min_w");
  if (j.contains("trials")) s.trials = integer(j["trials"], "trials");
  s.validate();
  return s;
}

Json sweep_to_json(const SweepSpec& s) {
  Json j;
  j["name"] = s.name;
  j["metric"] = std::string(to_string(s.metric));
  j["axis"] = {{"name", std::string(to_string(s.axis))}, {"values", s.axis_values}};
  Json schemes = Json::array();
  for (Scheme sc : s.schemes) schemes.push_back(std::string(to_string(sc)));
  j["schemes"] = schemes;
  j["geometry"] = {{"d_sr", s.geometry.d_sr},
                   {"d_sd", s.geometry.d_sd},
                   {"d_se", s.geometry.d_se},
                   {"n_relays", s.geometry.n_relays},
                   {"n_eaves", s.geometry.n_eaves}};
  j["channel"] = {{"rho0", s.los.rho0}, {"path_loss_exponent", s.los.c}};
  j["seed"] = s.los.seed;
  j["p0_dbm"] = s.power.p0_dbm;
  j["sigma2_dbm"] = s.power.sigma2_dbm;
  j["rs0"] = s.power.rs0;
  if (s.power.p0_min_w) j["p0_min_w"] = *s.power.p0_min_w;
  j["trials"] = s.trials;
  return j;
}

std::string config_hash(const SweepSpec& spec) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(fnv1a(sweep_to_json(spec).dump())));
  return buf;
}

SchemeSolution solve_scheme(Scheme s, Metric m, const Scenario& sc) {
  if (m == Metric::kMaxRate) {
    switch (s) {
      case Scheme::kDf:
        return sc.n_eaves() == 1 ? df_max_secrecy_j1(sc) : df_multi_max(sc);
      case Scheme::kDfMulti: return df_multi_max(sc);
      case Scheme::kDfSub: return df_multi_suboptimal(sc);
      case Scheme::kCj: return cj_max_secrecy(sc);
      case Scheme::kCjSub: return cj_suboptimal_maxrate(sc);
      case Scheme::kDirect: {
        SchemeSolution sol;
        sol.ps = sc.p0;
        sol.w = CVec::Zero(sc.n_relays());
        sol.total_power = sc.p0;
        sol.secrecy_rate = direct_transmission_rate(sc);
        return sol;
      }
    }
  } else {
    switch (s) {
      case Scheme::kDf: return df_min_power(sc);
      case Scheme::kCj: return cj_min_power(sc);
      case Scheme::kCjSub: return cj_suboptimal_minpower(sc);
      case Scheme::kDirect: {
        SchemeSolution sol;
        sol.ps = direct_min_power(sc);
        sol.w = CVec::Zero(sc.n_relays());
        sol.total_power = sol.ps;
        sol.branch = Branch::kSourceOnly;
        Scenario at = sc;
        at.p0 = sol.ps;
        sol.secrecy_rate = direct_transmission_rate(at);
        return sol;
      }
      case Scheme::kDfMulti:
      case Scheme::kDfSub: break;
    }
  }
  throw ContractError(std::string(to_string(s)) + " has no " + std::string(to_string(m)) +
                      " solver");
}

TrialOutcome evaluate_scheme(Scheme s, Metric m, const Scenario& sc) {
  TrialOutcome out;
  try {
    const SchemeSolution sol = solve_scheme(s, m, sc);
    out.value = m == Metric::kMaxRate ? sol.secrecy_rate : watt_to_dbm(sol.total_power);
  } catch (const InfeasibleError& e) {
    out.kind = TrialOutcome::Kind::kInfeasible;
    out.what = e.what();
  } catch (const std::exception& e) {
    out.kind = TrialOutcome::Kind::kFailed;
    out.what = e.what();
  }
  return out;
}

int default_threads() {
  int n = static_cast<int>(std::thread::hardware_concurrency());
  if (const char* env = std::getenv("SECRECY_OPT_THREADS")) {
    const int cap = std::atoi(env);
    if (cap > 0) n = n > 0 ? std::min(n, cap) : cap;
  }
  return std::max(1, n);
}

SweepResult run_sweep(const SweepSpec& spec, int threads) {
  spec.validate();
  const std::size_t points = spec.axis_values.size();
  const auto trials = static_cast<std::size_t>(spec.trials);
  const std::size_t ns = spec.schemes.size();
  std::vector<TrialOutcome> outcomes(points * trials * ns);
  auto slot = [&](std::size_t p, std::size_t t, std::size_t k) {
    return (p * trials + t) * ns + k;
  };

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t task = next++; task < points * trials; task = next++) {
      const std::size_t p = task / trials;
      const std::size_t t = task % trials;
      try {
        const Scenario sc =
            gen_channels(spec.geometry_at(spec.axis_values[p]), spec.los, spec.power, t);
        for (std::size_t k = 0; k < ns; ++k) {
          outcomes[slot(p, t, k)] = evaluate_scheme(spec.schemes[k], spec.metric, sc);
        }
      } catch (const std::exception& e) {
        for (std::size_t k = 0; k < ns; ++k) {
          outcomes[slot(p, t, k)] = {TrialOutcome::Kind::kFailed, 0.0, e.what()};
        }
      }
    }
  };
  const int n_threads = std::max(1, threads > 0 ? threads : default_threads());
  if (n_threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int i = 0; i < n_threads; ++i) pool.emplace_back(worker);
  }

  SweepResult r;
  r.spec = spec;
  for (std::size_t k = 0; k < ns; ++k) {
    SchemeSeries series;
    series.scheme = spec.schemes[k];
    for (std::size_t p = 0; p < points; ++p) {
      PointStats st;
      st.trials = spec.trials;
      // Kahan sums in trial order, so the schedule cannot change the bits.
      double sum = 0.0, comp = 0.0;
      auto kahan = [](double& s, double& c, double x) {
        const double y = x - c;
        const double t = s + y;
        c = (t - s) - y;
        s = t;
      };
      for (std::size_t t = 0; t < trials; ++t) {
        const TrialOutcome& o = outcomes[slot(p, t, k)];
        if (o.kind == TrialOutcome::Kind::kOk) {
          ++st.feasible;
          kahan(sum, comp, o.value);
        } else if (o.kind == TrialOutcome::Kind::kFailed) {
          ++st.failed;
          r.failures.push_back({spec.axis_values[p], spec.schemes[k], static_cast<int>(t), o.what});
        }
      }
      if (st.feasible == 0) {
        st.mean = std::numeric_limits<double>::quiet_NaN();
        st.std_error = std::numeric_limits<double>::quiet_NaN();
      } else {
        const double n = st.feasible;
        st.mean = sum / n;
        double ss = 0.0, ss_comp = 0.0;
        for (std::size_t t = 0; t < trials; ++t) {
          const TrialOutcome& o = outcomes[slot(p, t, k)];
          if (o.kind == TrialOutcome::Kind::kOk) kahan(ss, ss_comp, (o.value - st.mean) * (o.value - st.mean));
        }
        st.std_error = n > 1 ? std::sqrt(ss / (n - 1) / n) : 0.0;
      }
      series.points.push_back(st);
    }
    r.series.push_back(std::move(series));
  }
  return r;
}

namespace {

std::string fmt(double x, const char* spec = "%.10g") {
  if (std::isnan(x)) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, x);
  return buf;
}

}  // namespace

std::string to_csv(const SweepResult& r) {
  std::string out = "axis,scheme,mean,stderr,trials,feasible_fraction\n";
  for (std::size_t p = 0; p < r.spec.axis_values.size(); ++p) {
    for (const auto& s : r.series) {
      const PointStats& st = s.points[p];
      out += fmt(r.spec.axis_values[p]) + "," + std::string(to_string(s.scheme)) + "," +
             fmt(st.mean) + "," + fmt(st.std_error) + "," + std::to_string(st.trials) + "," +
             fmt(st.feasible_fraction(), "%.6g") + "\n";
    }
  }
  return out;
}

std::string to_svg(const SweepResult& r) {
  constexpr double kW = 640, kH = 420, kL = 70, kR = 130, kT = 30, kB = 50;
  const auto& xs = r.spec.axis_values;
  double xmin = xs.front(), xmax = xs.front();
  for (double x : xs) {
    xmin = std::min(xmin, x);
    xmax = std::max(xmax, x);
  }
  double ymin = INFINITY, ymax = -INFINITY;
  for (const auto& s : r.series) {
    for (const auto& p : s.points) {
      if (std::isfinite(p.mean)) {
        ymin = std::min(ymin, p.mean);
        ymax = std::max(ymax, p.mean);
      }
    }
  }
  if (!std::isfinite(ymin)) ymin = 0, ymax = 1;
  if (ymax - ymin < 1e-12) ymin -= 0.5, ymax += 0.5;
  if (xmax - xmin < 1e-12) xmin -= 0.5, xmax += 0.5;
  const double pad = 0.05 * (ymax - ymin);
  ymin -= pad;
  ymax += pad;
  auto px = [&](double x) { return kL + (x - xmin) / (xmax - xmin) * (kW - kL - kR); };
  auto py = [&](double y) { return kH - kB - (y - ymin) / (ymax - ymin) * (kH - kT - kB); };

  static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b"};
  std::string s = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt(kW) + "\" height=\"" +
                  fmt(kH) + "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  s += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  s += "<text x=\"" + fmt(kL) + "\" y=\"18\">" + r.spec.name + "</text>\n";
  s += "<line x1=\"" + fmt(kL) + "\" y1=\"" + fmt(kH - kB) + "\" x2=\"" + fmt(kW - kR) +
       "\" y2=\"" + fmt(kH - kB) + "\" stroke=\"black\"/>\n";
  s += "<line x1=\"" + fmt(kL) + "\" y1=\"" + fmt(kT) + "\" x2=\"" + fmt(kL) + "\" y2=\"" +
       fmt(kH - kB) + "\" stroke=\"black\"/>\n";
  for (int i = 0; i <= 4; ++i) {
    const double xv = xmin + (xmax - xmin) * i / 4.0;
    const double yv = ymin + (ymax - ymin) * i / 4.0;
    s += "<text x=\"" + fmt(px(xv)) + "\" y=\"" + fmt(kH - kB + 18) +
         "\" text-anchor=\"middle\">" + fmt(xv, "%.4g") + "</text>\n";
    s += "<text x=\"" + fmt(kL - 6) + "\" y=\"" + fmt(py(yv) + 4) + "\" text-anchor=\"end\">" +
         fmt(yv, "%.4g") + "</text>\n";
  }
  s += "<text x=\"" + fmt((kL + kW - kR) / 2) + "\" y=\"" + fmt(kH - 10) +
       "\" text-anchor=\"middle\">" + std::string(to_string(r.spec.axis)) + "</text>\n";
  const std::string ylabel = r.spec.metric == Metric::kMaxRate ? "secrecy rate (bits/s/Hz)"
                                                               : "transmit power (dBm)";
  s += "<text x=\"16\" y=\"" + fmt((kT + kH - kB) / 2) +
       "\" text-anchor=\"middle\" transform=\"rotate(-90 16 " + fmt((kT + kH - kB) / 2) + ")\">" +
       ylabel + "</text>\n";

  for (std::size_t k = 0; k < r.series.size(); ++k) {
    const char* color = colors[k % 6];
    std::string pts;
    for (std::size_t p = 0; p < xs.size(); ++p) {
      const double y = r.series[k].points[p].mean;
      if (!std::isfinite(y)) continue;
      if (!pts.empty()) pts += " ";
      pts += fmt(px(xs[p]), "%.2f") + "," + fmt(py(y), "%.2f");
    }
    if (!pts.empty()) {
      s += "<polyline fill=\"none\" stroke=\"" + std::string(color) +
           "\" stroke-width=\"1.5\" points=\"" + pts + "\"/>\n";
    }
    const double ly = kT + 16.0 * static_cast<double>(k);
    s += "<line x1=\"" + fmt(kW - kR + 10) + "\" y1=\"" + fmt(ly) + "\" x2=\"" +
         fmt(kW - kR + 30) + "\" y2=\"" + fmt(ly) + "\" stroke=\"" + color + "\"/>\n";
    s += "<text x=\"" + fmt(kW - kR + 35) + "\" y=\"" + fmt(ly + 4) + "\">" +
         std::string(to_string(r.series[k].scheme)) + "</text>\n";
  }
  s += "</svg>\n";
  return s;
}

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw Error("cannot write " + tmp.string());
    f << content;
    f.flush();
    if (!f) throw Error("write failed for " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw Error("cannot rename " + tmp.string() + " to " + path.string() + ": " + ec.message());
  }
}

Json run_manifest(const SweepSpec& spec, const std::vector<std::string>& outputs,
                  const std::string& timestamp) {
  Json j;
  j["tool"] = "secopt";
  j["version"] = kVersion;
  j["config_hash"] = config_hash(spec);
  j["seed"] = spec.los.seed;
  j["timestamp"] = timestamp;
  j["config"] = sweep_to_json(spec);
  j["outputs"] = outputs;
  j["assumptions"] = {
      {"sigma2_dbm", spec.power.sigma2_dbm},
      {"p0_min", spec.power.p0_min_w ? "configured" : "derived from source-relay gains"},
      {"note", "noise power and minimum source power are modelling assumptions"}};
  return j;
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace secopt::experiments
