#include "secopt/df_opt.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <sstream>

#include "secopt/errors.hpp"
#include "secopt/json_io.hpp"
#include "secopt/roots.hpp"

namespace secopt {

namespace {

constexpr double kCollinear = 1e-12;

void require_single_eavesdropper(const Scenario& sc, const char* who) {
  sc.validate();
  if (sc.n_eaves() != 1) {
    throw ContractError(std::string(who) + ": needs exactly one eavesdropper");
  }
}

// Numerator and denominator of the inner DF ratio as functions of z.
struct InnerRatio {
  double c0;  // sigma2 + ps |h0|^2
  double a;   // sigma2 + ps |g0|^2
  double hh;  // (p0 - ps) |h|^2
  double b;   // (p0 - ps) |g|^2
  double zeta;

  double num(double z) const { return c0 + hh * overlap_transfer(zeta, z); }
  double den(double z) const { return a + b * z; }
  double ratio(double z) const { return num(z) / den(z); }

  // d/dz log(num/den) and its derivative.
  std::pair<double, double> dlog(double z) const {
    const OverlapTransfer t = overlap_transfer_derivs(zeta, z);
    const double n = c0 + hh * t.value;
    const double d = a + b * z;
    const double n1 = hh * t.d1;
    const double n2 = hh * t.d2;
    return {n1 / n - b / d, (n2 * n - n1 * n1) / (n * n) + (b * b) / (d * d)};
  }
};

InnerRatio make_inner(const Scenario& sc, double ps, double zeta) {
  const double relay = std::max(0.0, sc.p0 - ps);
  return {sc.sigma2 + ps * std::norm(sc.h0), sc.sigma2 + ps * std::norm(sc.g0[0]),
          relay * sc.h.squaredNorm(), relay * sc.g[0].squaredNorm(), zeta};
}

double zeta_of(const Scenario& sc) {
  const CVec u1 = sc.g[0].normalized();
  const CVec u2 = sc.h.normalized();
  return std::min(1.0, std::abs(u1.dot(u2)));
}

bool linear_in_z(const Scenario& sc, double zeta) {
  // L(z) is affine when zeta is 0 or 1; the ratio is then linear-fractional.
  return sc.n_relays() == 1 || zeta * std::sqrt(std::max(0.0, 1.0 - zeta * zeta)) <= kCollinear;
}

std::string dump(const Scenario& sc) { return scenario_to_json(sc).dump(); }

}  // namespace

DfRateInternals df_rate_internals(const Scenario& sc) {
  require_single_eavesdropper(sc, "df_rate_internals");
  DfRateInternals out;
  out.u1 = sc.g[0].normalized();
  out.u2 = sc.h.normalized();
  const Cplx u21 = out.u2.dot(out.u1);
  out.zeta = std::min(1.0, std::abs(u21));
  out.theta = std::arg(u21);
  out.collinear = sc.n_relays() == 1 || out.zeta > 1.0 - kCollinear;
  out.j_p0 = df_inner_ratio(sc, sc.p0, 0.0);
  out.j_pmin = df_j1_objective(sc, sc.p0_min);
  return out;
}

double df_inner_ratio(const Scenario& sc, double ps, double z) {
  return make_inner(sc, ps, zeta_of(sc)).ratio(z);
}

std::array<double, 2> df_inner_z_closed_form_roots(const Scenario& sc, double ps) {
  require_single_eavesdropper(sc, "df_inner_z_closed_form");
  const double zeta = zeta_of(sc);
  const double relay = sc.p0 - ps;
  const double hn = sc.h.squaredNorm();
  const double a = sc.sigma2 + ps * std::norm(sc.g0[0]);
  const double b = relay * sc.g[0].squaredNorm();
  const double c = sc.sigma2 + ps * std::norm(sc.h0) + relay * hn * (1.0 - zeta * zeta);
  const double d = relay * hn * (1.0 - 2.0 * zeta * zeta);
  const double f = 2.0 * relay * hn * zeta * std::sqrt(1.0 - zeta * zeta);
  const double aab = a * a + a * b;
  const double big_b = (2.0 * a + b) / aab;
  const double adbc = a * d + b * c;
  const double big_c = (f * f * (2.0 * a + b) * (2.0 * a + b) + 4.0 * adbc * adbc) /
                       (4.0 * f * f * aab * aab + 4.0 * adbc * adbc * aab);
  const double disc = std::sqrt(std::max(0.0, big_b * big_b - 4.0 * big_c));
  // (B -+ sqrt(B^2-4C)) / (2 b C), the minus root rewritten without cancellation.
  return {2.0 / (b * (big_b + disc)) - a / b, (big_b + disc) / (2.0 * b * big_c) - a / b};
}

double df_inner_z_closed_form(const Scenario& sc, double ps) {
  return df_inner_z_closed_form_roots(sc, ps)[0];
}

double df_inner_z(const Scenario& sc, double ps) {
  require_single_eavesdropper(sc, "df_inner_z");
  if (!(ps >= sc.p0_min - 1e-12 * sc.p0 && ps <= sc.p0 * (1.0 + 1e-12))) {
    throw ContractError("df_inner_z: ps outside [p0_min, p0]");
  }
  const double zeta = zeta_of(sc);
  const InnerRatio inner = make_inner(sc, ps, zeta);

  if (linear_in_z(sc, zeta)) {
    if (sc.n_relays() == 1) return 1.0;
    return inner.ratio(1.0) > inner.ratio(0.0) ? 1.0 : 0.0;
  }

  if (inner.b <= 0.0) {
    // Zero relay budget: the ratio no longer depends on z. Use the limit of
    // the stationary point, where |h|^2 L'(z) = (c0/a) |g|^2.
    const double hn = sc.h.squaredNorm();
    const double target = inner.c0 / inner.a * sc.g[0].squaredNorm();
    auto fdf = [&](double z) {
      const OverlapTransfer t = overlap_transfer_derivs(zeta, z);
      return std::pair{hn * t.d1 - target, hn * t.d2};
    };
    return safeguarded_newton(fdf, 0.0, 1.0, 0.5, true).x;
  }

  // The closed form solves a squared stationarity condition; its second
  // root is sometimes the true maximizer, so both are scored.
  const std::array<double, 2> roots = df_inner_z_closed_form_roots(sc, ps);
  double z_closed = std::numeric_limits<double>::quiet_NaN();
  for (double r : roots) {
    if (!(std::isfinite(r) && r >= -1e-9 && r <= 1.0 + 1e-9)) continue;
    if (std::isnan(z_closed) ||
        inner.ratio(std::clamp(r, 0.0, 1.0)) > inner.ratio(std::clamp(z_closed, 0.0, 1.0))) {
      z_closed = r;
    }
  }
  if (std::isnan(z_closed)) {
    std::ostringstream msg;
    msg << "df_inner_z: closed form gave z=" << roots[0] << ", " << roots[1]
        << " outside [0,1] at ps=" << ps << "; instance " << dump(sc);
    throw NumericalError(msg.str());
  }
  const double x0 = std::clamp(z_closed, 0.0, 1.0);
  RootOptions opts;
  opts.ftol = 1e-13;
  opts.max_iter = 60;
  return safeguarded_newton([&](double z) { return inner.dlog(z); }, 0.0, 1.0, x0, true, opts)
      .x;
}

double df_j1_objective(const Scenario& sc, double ps) {
  const double zeta = zeta_of(sc);
  const InnerRatio inner = make_inner(sc, ps, zeta);
  if (inner.b <= 0.0) return inner.ratio(0.0);
  return inner.ratio(df_inner_z(sc, ps));
}

SchemeSolution df_max_secrecy_j1(const Scenario& sc) {
  const DfRateInternals t = df_rate_internals(sc);
  SchemeSolution sol;
  sol.diagnostics["zeta"] = t.zeta;
  sol.diagnostics["theta"] = t.theta;
  sol.diagnostics["j_pmin"] = t.j_pmin;
  sol.diagnostics["j_p0"] = t.j_p0;
  if (t.collinear) {
    sol.diagnostics["collinear_fallback"] = 1.0;
    sol.notes.emplace_back("h and g are collinear; inner optimum taken at z in {0,1}");
  }

  const bool tie = std::abs(t.j_pmin - t.j_p0) <= 1e-12 * std::max(1.0, t.j_p0);
  if (sc.p0_min < sc.p0 && t.j_pmin > t.j_p0 && !tie) {
    const double z = df_inner_z(sc, sc.p0_min);
    const QuadraticMax x = constrained_quadratic_max(t.u1, t.u2, z);
    sol.ps = sc.p0_min;
    sol.w = std::sqrt(sc.p0 - sc.p0_min) * x.z;
    sol.branch = t.collinear ? Branch::kCollinearFallback : Branch::kRelaysActive;
    sol.diagnostics["z"] = z;
  } else {
    sol.ps = sc.p0;
    sol.w = CVec::Zero(sc.n_relays());
    sol.branch = Branch::kDirect;
  }
  sol.total_power = sol.ps + sol.w.squaredNorm();
  sol.secrecy_rate = secrecy_rate(df_rates(sc, sol.ps, sol.w));
  sol.iterations = 0;
  sol.converged = true;
  return sol;
}

SchemeSolution df_min_power(const Scenario& sc) {
  require_single_eavesdropper(sc, "df_min_power");
  if (!(sc.rs0 > 0.0)) throw ContractError("df_min_power: rs0 must be positive");

  const double k = std::pow(4.0, sc.rs0);
  const double h0sq = std::norm(sc.h0);
  const double delta = k * std::norm(sc.g0[0]) - h0sq;

  // Nonzero eigenpairs of R_h - 4^Rs R_g.
  double eta_pos = 0.0;
  double eta_neg = 0.0;
  CVec e_pos;
  CVec e_neg;
  try {
    const RankTwoEig e = rank_two_eig(sc.h, std::sqrt(k) * sc.g[0]);
    eta_pos = e.eta1;
    eta_neg = e.eta2;
    e_pos = e.e1;
    e_neg = e.e2;
  } catch (const DegeneracyError&) {
    const HermEig e = herm_eig(outer(sc.h) - k * outer(sc.g[0]));
    const Eigen::Index last = e.values.size() - 1;
    eta_pos = e.values[0];
    e_pos = e.vectors.col(0);
    eta_neg = e.values[last];
    e_neg = e.vectors.col(last);
  }

  SchemeSolution sol;
  sol.diagnostics["delta"] = delta;
  sol.ps = sc.p0_min;

  if (std::abs(delta) < 1e-12 * h0sq) {
    if (!(eta_pos > 0.0)) {
      throw InfeasibleError("df_min_power: relays cannot favor the destination");
    }
    sol.branch = Branch::kBalanced;
    sol.w = std::sqrt((k - 1.0) * sc.sigma2 / eta_pos) * e_pos;
    sol.diagnostics["xi1"] = eta_pos;
  } else {
    const double zeta = (k - 1.0) * sc.sigma2 / (h0sq - k * std::norm(sc.g0[0]));
    // Eigenpairs of (R_h - 4^Rs R_g)/delta; dividing by a negative delta
    // swaps which one is positive.
    const double lambda1 = delta > 0.0 ? eta_pos / delta : eta_neg / delta;
    const double lambda2 = delta > 0.0 ? eta_neg / delta : eta_pos / delta;
    const CVec& u1 = delta > 0.0 ? e_pos : e_neg;
    const CVec& u2 = delta > 0.0 ? e_neg : e_pos;
    sol.diagnostics["zeta"] = zeta;
    sol.diagnostics["lambda1"] = lambda1;
    sol.diagnostics["lambda2"] = lambda2;

    if (zeta >= sc.p0_min && lambda2 >= -1.0) {
      sol.branch = Branch::kSourceOnly;
      sol.ps = zeta;
      sol.w = CVec::Zero(sc.n_relays());
    } else if (zeta >= sc.p0_min) {
      sol.branch = Branch::kNegativeEigen;
      sol.w = std::sqrt((zeta - sc.p0_min) / std::abs(lambda2)) * u2;
    } else {
      if (!(lambda1 > 0.0)) {
        throw InfeasibleError("df_min_power: no relay direction raises the source margin");
      }
      sol.branch = Branch::kPositiveEigen;
      sol.w = std::sqrt((sc.p0_min - zeta) / lambda1) * u1;
    }
  }

  sol.total_power = sol.ps + sol.w.squaredNorm();
  if (!(sol.total_power <= kPowerSanityCap)) {
    throw InfeasibleError("df_min_power: required power exceeds the 1e6 W sanity cap");
  }
  const LinkRates rates = df_rates(sc, sol.ps, sol.w);
  sol.secrecy_rate = secrecy_rate(rates);
  sol.diagnostics["constraint_residual"] = rates.rd - rates.re[0] - sc.rs0;
  return sol;
}

}  // namespace secopt
