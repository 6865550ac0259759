#include "secopt/cj_opt.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>

#include "secopt/errors.hpp"
#include "secopt/roots.hpp"

namespace secopt {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kFlat = 1e-12;  // kappa sqrt(1-kappa^2) below this: T is affine
constexpr int kMaxAltIter = 200;
constexpr double kObjTol = 1e-10;
constexpr double kZTol = 1e-8;
constexpr double kMonotoneSlack = 1e-12;
constexpr std::array<double, kCjStarts> kSeedFractions{0.5, 0.1, 0.3, 0.7, 0.9};

void require_cj_instance(const Scenario& sc, const char* who) {
  sc.validate();
  if (sc.n_eaves() != 1) {
    throw ContractError(std::string(who) + ": needs exactly one eavesdropper");
  }
  if (sc.n_relays() < 2) {
    throw ContractError(std::string(who) + ": needs at least two relays");
  }
  if (sc.h.squaredNorm() <= 0.0 || sc.g[0].squaredNorm() <= 0.0) {
    throw ContractError(std::string(who) + ": relay channels must be nonzero");
  }
  if (std::norm(sc.h0) <= 0.0 || std::norm(sc.g0[0]) <= 0.0) {
    throw ContractError(std::string(who) + ": direct channels must be nonzero");
  }
}

double overlap_of(const Scenario& sc) {
  return std::min(1.0, std::abs(sc.h.normalized().dot(sc.g[0].normalized())));
}

double curvature(double kappa) { return kappa * std::sqrt(std::max(0.0, 1.0 - kappa * kappa)); }

// T(kappa, z) - beta1 z - beta2.
double line_gap(double kappa, double beta1, double beta2, double z) {
  return overlap_transfer(kappa, z) - beta1 * z - beta2;
}

CVec jamming_beam(const Scenario& sc, double z) {
  return constrained_quadratic_max(sc.h.normalized(), sc.g[0].normalized(), std::clamp(z, 0.0, 1.0))
      .z;
}

void check_monotone(double prev, double next, bool increasing, const char* who) {
  const double drop = increasing ? prev - next : next - prev;
  if (drop > kMonotoneSlack * std::max(1.0, std::abs(prev))) {
    std::ostringstream msg;
    msg << who << ": alternating step worsened the objective from " << prev << " to " << next;
    throw InternalError(msg.str());
  }
}

}  // namespace

CjAlphas cj_rate_alphas(const Scenario& sc) {
  CjAlphas al;
  const double h0 = std::norm(sc.h0);
  const double g0 = std::norm(sc.g0[0]);
  al.a1 = sc.h.squaredNorm() / h0;
  al.a2 = sc.sigma2 / h0;
  al.a3 = sc.g[0].squaredNorm() / g0;
  al.a4 = sc.sigma2 / g0;
  al.eta = overlap_of(sc);
  return al;
}

CjAlphas cj_power_alphas(const Scenario& sc) {
  const double k = std::pow(2.0, sc.rs0);
  CjAlphas al = cj_rate_alphas(sc);
  al.a1 *= k - 1.0;
  al.a2 *= k - 1.0;
  al.a3 *= (k - 1.0) / k;
  al.a4 *= (k - 1.0) / k;
  return al;
}

std::vector<double> overlap_line_roots(double kappa, double beta1, double beta2) {
  std::vector<double> out;
  const double ks = curvature(kappa);
  const double at0 = 1.0 - kappa * kappa - beta2;
  const double at1 = kappa * kappa - beta1 - beta2;
  if (ks <= kFlat) {
    // T is affine: 1 - z (kappa = 0) or z (kappa = 1).
    const double slope = at1 - at0;
    if (slope != 0.0) {
      const double z = -at0 / slope;
      if (z >= 0.0 && z <= 1.0) out.push_back(z);
    }
    return out;
  }
  // With z = 1/(1+u^2): -at0 u^2 - 2 ks u + at1 = 0 ... written as
  // a u^2 + b u + c = 0 with a = -at0, b = -2 ks, c = -at1 after moving terms.
  const double a = -at0;
  const double c = -at1;
  const double disc = ks * ks - a * c;
  if (disc < 0.0) return out;
  const double q = ks + std::sqrt(disc);  // stable: q = -(b - sqrt(b^2-4ac))/2
  std::array<double, 2> us{a != 0.0 ? q / a : kInf, q != 0.0 ? c / q : kInf};
  for (double u : us) {
    if (!(u >= 0.0)) continue;
    const double z = std::isinf(u) ? 0.0 : 1.0 / (1.0 + u * u);
    if (std::none_of(out.begin(), out.end(), [&](double r) { return std::abs(r - z) <= 1e-15; })) {
      out.push_back(z);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

double overlap_line_peak(double kappa, double slope) {
  const double ks = curvature(kappa);
  if (ks <= kFlat) {
    const double t0 = overlap_transfer(kappa, 0.0);
    const double t1 = overlap_transfer(kappa, 1.0) - slope;
    return t1 > t0 ? 1.0 : 0.0;
  }
  // T'(z) = slope with z = 1/(1+u^2); u is the positive root of
  // ks u^2 - (slope - m) u - ks = 0, m = 2 kappa^2 - 1.
  const double m = 2.0 * kappa * kappa - 1.0;
  const double t = slope - m;
  const double root = std::sqrt(t * t + 4.0 * ks * ks);
  const double u = t >= 0.0 ? (t + root) / (2.0 * ks) : (2.0 * ks) / (root - t);
  return 1.0 / (1.0 + u * u);
}

ZInterval overlap_above_line(double kappa, double beta1, double beta2) {
  auto gap = [&](double z) { return line_gap(kappa, beta1, beta2, z); };
  const double g0 = gap(0.0);
  const double g1 = gap(1.0);
  const double tol = 1e-9 * (1.0 + std::abs(beta1) + std::abs(beta2));
  const std::vector<double> roots = overlap_line_roots(kappa, beta1, beta2);

  auto pick_root = [&](double lo, double hi, bool positive_left) {
    for (double r : roots) {
      if (r >= lo && r <= hi && std::abs(gap(r)) <= tol) return r;
    }
    return bisect(gap, lo, hi, positive_left).x;
  };

  if (g0 > 0.0 && g1 > 0.0) return {0.0, 1.0};
  if (g0 > 0.0) return {0.0, pick_root(0.0, 1.0, true)};
  if (g1 > 0.0) return {pick_root(0.0, 1.0, false), 1.0};
  const double peak = overlap_line_peak(kappa, beta1);
  if (!(gap(peak) > 0.0)) return {};
  return {pick_root(0.0, peak, false), pick_root(peak, 1.0, true)};
}

Positivity cj_positivity(const Scenario& sc) {
  require_cj_instance(sc, "cj_positivity");
  const CjAlphas al = cj_rate_alphas(sc);
  Positivity out;
  if (al.a2 < al.a4) {
    out.positive = true;
    return out;
  }
  const double z0 = overlap_line_peak(al.eta, al.a1 / al.a3);
  const double margin = al.a3 * overlap_transfer(al.eta, z0) - al.a1 * z0;
  out.z0 = z0;
  out.threshold_power = margin > 0.0 ? (al.a2 - al.a4) / margin : kInf;
  out.positive = sc.p0 > *out.threshold_power;
  return out;
}

double cj_rate_objective(const CjAlphas& al, double p0, double ps, double z) {
  const double relay = std::max(0.0, p0 - ps);
  const double gz = overlap_transfer(al.eta, z);
  return std::log2(1.0 + ps / (relay * al.a1 * z + al.a2)) -
         std::log2(1.0 + ps / (relay * al.a3 * gz + al.a4));
}

double cj_ps_given_z(const CjAlphas& al, double p0, double z) {
  const double gz = overlap_transfer(al.eta, z);
  const double a1 = p0 * al.a1 * z + al.a2;
  const double b1 = al.a1 * z;
  const double c1 = p0 * al.a3 * gz + al.a4;
  const double d1 = al.a3 * gz;
  const double qa = a1 * d1 * (1.0 - d1) - b1 * c1 * (1.0 - b1);
  const double qb = 2.0 * a1 * c1 * (d1 - b1);
  const double qc = a1 * c1 * (a1 - c1);

  std::vector<double> cands{0.0, p0};
  const double scale = std::abs(qb) * p0 + std::abs(qc);
  if (std::abs(qa) * p0 * p0 <= 1e-14 * scale) {
    if (qb != 0.0) cands.push_back(-qc / qb);
  } else {
    const double disc = qb * qb - 4.0 * qa * qc;
    if (disc >= 0.0) {
      const double q = -0.5 * (qb + std::copysign(std::sqrt(disc), qb));
      if (q != 0.0) {
        cands.push_back(q / qa);
        cands.push_back(qc / q);
      }
    }
  }

  double best_ps = 0.0;
  double best = cj_rate_objective(al, p0, 0.0, z);
  for (double ps : cands) {
    if (!(ps >= 0.0 && ps <= p0)) continue;
    const double v = cj_rate_objective(al, p0, ps, z);
    if (v > best) {
      best = v;
      best_ps = ps;
    }
  }
  return best_ps;
}

ZInterval cj_rate_interval(const CjAlphas& al, double p0, double ps) {
  const double relay = p0 - ps;
  if (!(relay > 0.0)) return {};
  return overlap_above_line(al.eta, al.a1 / al.a3, (al.a2 - al.a4) / (relay * al.a3));
}

ZDerivs cj_rate_dz(const CjAlphas& al, double p0, double ps, double z) {
  const double relay = p0 - ps;
  const double k = ps / relay;
  const double a3 = al.a2 / relay;
  const double b3 = (ps + al.a2) / relay;
  const double c3 = al.a4 / relay;
  const double d3 = (ps + al.a4) / relay;
  const OverlapTransfer t = overlap_transfer_derivs(al.eta, z);
  const double p = al.a3 * t.value + c3;
  const double q = al.a3 * t.value + d3;
  const double s = al.a1 * z + a3;
  const double u = al.a1 * z + b3;
  const double g1 = al.a3 * t.d1;
  ZDerivs out;
  out.d1 = k * (g1 / (p * q) - al.a1 / (s * u));
  out.d2 = k * (al.a3 * t.d2 / (p * q) - g1 * g1 * (p + q) / (p * p * q * q) +
                al.a1 * al.a1 * (s + u) / (s * s * u * u));
  return out;
}

double cj_z_given_ps(const CjAlphas& al, double p0, double ps) {
  if (!(ps > 0.0 && ps < p0)) throw ContractError("cj_z_given_ps: ps must lie in (0, p0)");
  const ZInterval iv = cj_rate_interval(al, p0, ps);
  if (iv.empty()) throw InfeasibleError("cj_z_given_ps: no positive secrecy rate at this ps");
  auto fdf = [&](double z) {
    const ZDerivs d = cj_rate_dz(al, p0, ps, z);
    return std::pair{d.d1, d.d2};
  };
  return safeguarded_newton(fdf, iv.lo, iv.hi, 0.5 * (iv.lo + iv.hi), true).x;
}

namespace {

void finish_rate_solution(const Scenario& sc, SchemeSolution& sol, double z) {
  sol.w = std::sqrt(std::max(0.0, sc.p0 - sol.ps)) * jamming_beam(sc, z);
  sol.total_power = sol.ps + sol.w.squaredNorm();
  sol.secrecy_rate = secrecy_rate(cj_rates(sc, sol.ps, sol.w));
}

}  // namespace

SchemeSolution cj_max_secrecy(const Scenario& sc) {
  require_cj_instance(sc, "cj_max_secrecy");
  const CjAlphas al = cj_rate_alphas(sc);
  const Positivity pos = cj_positivity(sc);
  const double p0 = sc.p0;

  SchemeSolution sol;
  if (!pos.positive) {
    sol.branch = Branch::kNoPositiveRate;
    sol.ps = 0.0;
    sol.w = CVec::Zero(sc.n_relays());
    sol.notes.emplace_back("no source power gives a positive secrecy rate");
    if (pos.threshold_power) sol.diagnostics["threshold_power"] = *pos.threshold_power;
    return sol;
  }

  // Starts are source powers with the z-step taken first. Seeding z
  // directly can send the first ps-step to p0, where z stops mattering and
  // the iteration stalls. The z = 0 baseline's source power is one start,
  // so the result never falls below it.
  const double ps_hi = pos.threshold_power ? p0 - std::max(0.0, *pos.threshold_power) : p0;
  std::vector<double> seeds;
  for (double frac : kSeedFractions) seeds.push_back(frac * ps_hi);
  const double ps_sub = cj_suboptimal_maxrate(sc).ps;
  if (ps_sub > 0.0 && ps_sub < ps_hi) seeds[3] = ps_sub;

  double best_obj = -kInf;
  double best_ps = 0.0;
  double best_z = 0.0;
  std::size_t best_trace = 0;
  int total_iter = 0;
  for (double ps_seed : seeds) {
    AltIterTrace tr;
    double ps = ps_seed;
    double z = cj_z_given_ps(al, p0, ps);
    double obj = cj_rate_objective(al, p0, ps, z);
    tr.seed = z;
    tr.steps.push_back({ps, z, obj, std::nan("")});
    for (int it = 1; it <= kMaxAltIter; ++it) {
      tr.iterations = it;
      const double ps_new = cj_ps_given_z(al, p0, z);
      const double obj_ps = cj_rate_objective(al, p0, ps_new, z);
      check_monotone(obj, obj_ps, true, "cj_max_secrecy");
      const double ps_prev = ps;
      ps = ps_new;
      if (!(ps > 0.0 && ps < p0)) {
        // Either the source is silent or no power is left for jamming; z
        // no longer matters.
        tr.steps.push_back({ps, z, obj_ps, std::nan("")});
        obj = obj_ps;
        tr.converged = true;
        break;
      }
      const double z_new = cj_z_given_ps(al, p0, ps);
      const double obj_z = cj_rate_objective(al, p0, ps, z_new);
      check_monotone(obj_ps, obj_z, true, "cj_max_secrecy");
      tr.steps.push_back({ps, z_new, obj_z, std::nan("")});
      const bool done = std::abs(obj_z - obj) < kObjTol && std::abs(z_new - z) < kZTol &&
                        std::abs(ps - ps_prev) < kZTol * p0;
      obj = obj_z;
      z = z_new;
      if (done) {
        tr.converged = true;
        break;
      }
    }
    total_iter += tr.iterations;
    if (obj > best_obj) {
      best_obj = obj;
      best_ps = ps;
      best_z = z;
      best_trace = sol.traces.size();
    }
    sol.traces.push_back(std::move(tr));
  }

  sol.ps = best_ps;
  sol.branch = Branch::kAlternating;
  sol.iterations = total_iter;
  sol.converged = sol.traces[best_trace].converged;
  sol.diagnostics["z"] = best_z;
  sol.diagnostics["objective"] = best_obj;
  sol.diagnostics["eta"] = al.eta;
  if (pos.threshold_power) sol.diagnostics["threshold_power"] = *pos.threshold_power;
  if (!sol.converged) sol.notes.emplace_back("alternating iterations hit the cap");
  finish_rate_solution(sc, sol, best_z);
  return sol;
}

SchemeSolution cj_suboptimal_maxrate(const Scenario& sc) {
  require_cj_instance(sc, "cj_suboptimal_maxrate");
  const CjAlphas al = cj_rate_alphas(sc);
  const double p0 = sc.p0;
  const double d2 = al.a3 * (1.0 - al.eta * al.eta);
  const double c3 = al.a4 + p0 * d2;

  SchemeSolution sol;
  sol.diagnostics["d2"] = d2;
  if (al.a2 > al.a4 && !(p0 * d2 > al.a2 - al.a4)) {
    sol.ps = 0.0;
    sol.branch = Branch::kSuboptZero;
  } else if ((p0 + al.a4) * al.a4 > (p0 + al.a2) * c3) {
    sol.ps = p0;
    sol.branch = Branch::kSuboptFull;
  } else {
    // Stationary points of the z = 0 objective. The root expression can be
    // grouped two ways; both roots are scored and the better one kept.
    std::vector<std::pair<double, double>> roots;  // (ps, sign)
    const double lin = 1.0 - d2;
    if (std::abs(lin) <= 1e-12) {
      roots.emplace_back((c3 - al.a2) / 2.0, 0.0);
    } else {
      const double disc = c3 * c3 * d2 * d2 - c3 * d2 * lin * (al.a2 - c3);
      const double r = std::sqrt(std::max(0.0, disc));
      roots.emplace_back((-c3 * d2 + r) / (d2 * lin), 1.0);
      roots.emplace_back((-c3 * d2 - r) / (d2 * lin), -1.0);
    }
    double best = -kInf;
    double best_sign = 0.0;
    for (const auto& [ps, sign] : roots) {
      if (!(ps >= 0.0 && ps <= p0)) continue;
      const double v = cj_rate_objective(al, p0, ps, 0.0);
      if (v > best) {
        best = v;
        sol.ps = ps;
        best_sign = sign;
      }
    }
    if (!std::isfinite(best)) {
      throw NumericalError("cj_suboptimal_maxrate: no stationary point inside [0, p0]");
    }
    sol.branch = Branch::kSuboptInterior;
    sol.diagnostics["root_sign"] = best_sign;
  }
  sol.diagnostics["objective"] = cj_rate_objective(al, p0, sol.ps, 0.0);
  finish_rate_solution(sc, sol, 0.0);
  return sol;
}

double cj_power_objective(const CjAlphas& al, double gamma, double z) {
  const double f = cj_fgamma(al, gamma, z);
  if (!(f > 0.0)) return kInf;
  return 1.0 / f + gamma;
}

double cj_source_power(const CjAlphas& al, double gamma, double z) {
  const double f = cj_fgamma(al, gamma, z);
  return f > 0.0 ? 1.0 / f : kInf;
}

double cj_gamma_given_z(const CjAlphas& al, double z) {
  const double fz = overlap_transfer(al.eta, z);
  const double margin = al.a3 * fz - al.a1 * z;
  if (!(margin > 0.0)) {
    throw InfeasibleError("cj_gamma_given_z: jamming cannot favor the destination at this z");
  }
  const double top = al.a2 * al.a3 * fz - al.a1 * al.a4 * z;
  const double f1 = top * top / (margin + al.a1 * al.a3 * z * fz);
  return std::max((std::sqrt(f1) - (al.a4 - al.a2)) / margin, 0.0);
}

ZInterval cj_power_interval(const CjAlphas& al, double gamma) {
  if (!(gamma > 0.0)) {
    return al.a4 > al.a2 ? ZInterval{0.0, 1.0} : ZInterval{};
  }
  return overlap_above_line(al.eta, al.a1 / al.a3, (al.a2 - al.a4) / (gamma * al.a3));
}

double cj_fgamma(const CjAlphas& al, double gamma, double z) {
  return 1.0 / (gamma * al.a1 * z + al.a2) -
         1.0 / (gamma * al.a3 * overlap_transfer(al.eta, z) + al.a4);
}

ZDerivs cj_fgamma_dz(const CjAlphas& al, double gamma, double z) {
  const OverlapTransfer t = overlap_transfer_derivs(al.eta, z);
  const double s = gamma * al.a1 * z + al.a2;
  const double p = gamma * al.a3 * t.value + al.a4;
  const double ga1 = gamma * al.a1;
  const double gf1 = gamma * al.a3 * t.d1;
  ZDerivs out;
  out.d1 = -ga1 / (s * s) + gf1 / (p * p);
  out.d2 = 2.0 * ga1 * ga1 / (s * s * s) - 2.0 * gf1 * gf1 / (p * p * p) +
           gamma * al.a3 * t.d2 / (p * p);
  return out;
}

double cj_z_given_gamma(const CjAlphas& al, double gamma) {
  if (!(gamma > 0.0)) throw ContractError("cj_z_given_gamma: gamma must be positive");
  const ZInterval iv = cj_power_interval(al, gamma);
  if (iv.empty()) throw InfeasibleError("cj_z_given_gamma: target unreachable at this gamma");
  auto fdf = [&](double z) {
    const ZDerivs d = cj_fgamma_dz(al, gamma, z);
    return std::pair{d.d1, d.d2};
  };
  return safeguarded_newton(fdf, iv.lo, iv.hi, 0.5 * (iv.lo + iv.hi), true).x;
}

namespace {

void finish_power_solution(const Scenario& sc, SchemeSolution& sol, double gamma, double z) {
  sol.w = std::sqrt(gamma) * jamming_beam(sc, z);
  sol.total_power = sol.ps + sol.w.squaredNorm();
  const LinkRates rates = cj_rates(sc, sol.ps, sol.w);
  sol.secrecy_rate = secrecy_rate(rates);
  sol.diagnostics["constraint_residual"] = rates.rd - rates.re[0] - sc.rs0;
}

void require_target(const Scenario& sc, const char* who) {
  if (!(sc.rs0 > 0.0)) throw ContractError(std::string(who) + ": rs0 must be positive");
}

}  // namespace

SchemeSolution cj_min_power(const Scenario& sc) {
  require_cj_instance(sc, "cj_min_power");
  require_target(sc, "cj_min_power");
  const CjAlphas al = cj_power_alphas(sc);
  const bool source_alone_ok = al.a4 > al.a2;

  SchemeSolution sol;
  // z where jamming hurts the eavesdropper more than the destination.
  const ZInterval useful = overlap_above_line(al.eta, al.a1 / al.a3, 0.0);
  if (useful.empty()) {
    if (!source_alone_ok) {
      throw InfeasibleError("cj_min_power: secrecy target unreachable");
    }
    sol.branch = Branch::kSourceOnly;
    sol.ps = al.a2 * al.a4 / (al.a4 - al.a2);
    finish_power_solution(sc, sol, 0.0, 0.0);
    return sol;
  }

  double best_obj = kInf;
  double best_gamma = 0.0;
  double best_z = 0.0;
  std::size_t best_trace = 0;
  int total_iter = 0;
  // Each start is a z seed with the gamma-step first, except one warm start
  // from the z = 0 baseline's jamming power with the z-step first; that one
  // guarantees the result never exceeds the baseline's total power.
  struct Start {
    double z;
    double gamma;
  };
  std::vector<Start> starts;
  for (double frac : kSeedFractions) starts.push_back({useful.lo + frac * (useful.hi - useful.lo), 0.0});
  try {
    const double gamma_sub = cj_suboptimal_minpower(sc).diagnostics.at("gamma");
    if (gamma_sub > 0.0 && !cj_power_interval(al, gamma_sub).empty()) starts[3] = {0.0, gamma_sub};
  } catch (const InfeasibleError&) {
  }

  for (const Start& start : starts) {
    AltIterTrace tr;
    double z = start.z;
    double gamma = start.gamma;
    double obj = kInf;
    if (gamma > 0.0) {
      z = cj_z_given_gamma(al, gamma);
      obj = cj_power_objective(al, gamma, z);
      tr.steps.push_back({gamma, z, obj, std::nan("")});
    }
    tr.seed = z;
    for (int it = 1; it <= kMaxAltIter; ++it) {
      tr.iterations = it;
      // Outside the useful region only gamma = 0 can be optimal.
      const bool useful_z = al.a3 * overlap_transfer(al.eta, z) - al.a1 * z > 0.0;
      const double gamma_prev = gamma;
      gamma = useful_z ? cj_gamma_given_z(al, z) : 0.0;
      const double obj_g = cj_power_objective(al, gamma, z);
      if (std::isfinite(obj)) check_monotone(obj, obj_g, false, "cj_min_power");
      if (!(gamma > 0.0)) {
        tr.steps.push_back({gamma, z, obj_g, std::nan("")});
        obj = obj_g;
        tr.converged = true;
        break;
      }
      const double z_new = cj_z_given_gamma(al, gamma);
      const double obj_z = cj_power_objective(al, gamma, z_new);
      check_monotone(obj_g, obj_z, false, "cj_min_power");
      tr.steps.push_back({gamma, z_new, obj_z, std::nan("")});
      const bool done = std::abs(obj_z - obj) < kObjTol && std::abs(z_new - z) < kZTol &&
                        std::abs(gamma - gamma_prev) < kZTol * std::max(1.0, gamma);
      obj = obj_z;
      z = z_new;
      if (done) {
        tr.converged = true;
        break;
      }
    }
    total_iter += tr.iterations;
    if (obj < best_obj) {
      best_obj = obj;
      best_gamma = gamma;
      best_z = z;
      best_trace = sol.traces.size();
    }
    sol.traces.push_back(std::move(tr));
  }
  if (!std::isfinite(best_obj)) throw InfeasibleError("cj_min_power: secrecy target unreachable");

  sol.ps = cj_source_power(al, best_gamma, best_z);
  sol.branch = best_gamma > 0.0 ? Branch::kAlternating : Branch::kSourceOnly;
  sol.iterations = total_iter;
  sol.converged = sol.traces[best_trace].converged;
  sol.diagnostics["z"] = best_z;
  sol.diagnostics["gamma"] = best_gamma;
  sol.diagnostics["objective"] = best_obj;
  if (!sol.converged) sol.notes.emplace_back("alternating iterations hit the cap");
  finish_power_solution(sc, sol, best_gamma, best_z);
  return sol;
}

SchemeSolution cj_suboptimal_minpower(const Scenario& sc) {
  require_cj_instance(sc, "cj_suboptimal_minpower");
  require_target(sc, "cj_suboptimal_minpower");
  const CjAlphas al = cj_power_alphas(sc);
  const double e = al.a3 * (1.0 - al.eta * al.eta);

  double gamma = 0.0;
  if (!(al.a4 / al.a2 > 1.0 + std::sqrt(e))) {
    if (!(e > 0.0)) throw InfeasibleError("cj_suboptimal_minpower: jamming cannot be nulled");
    gamma = (al.a2 * std::sqrt(e) + al.a2 - al.a4) / e;
  }
  const double den = 1.0 / al.a2 - 1.0 / (gamma * e + al.a4);
  if (!(den > 0.0)) {
    throw InfeasibleError("cj_suboptimal_minpower: target unreachable with nulled jamming");
  }

  SchemeSolution sol;
  sol.ps = 1.0 / den;
  sol.branch = gamma > 0.0 ? Branch::kSuboptJamming : Branch::kSourceOnly;
  sol.diagnostics["gamma"] = gamma;
  finish_power_solution(sc, sol, gamma, 0.0);
  return sol;
}

}  // namespace secopt
