// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "../unit/helpers.hpp"
#include "secopt/cj_opt.hpp"
#include "secopt/df_multi.hpp"
#include "secopt/df_opt.hpp"
#include "secopt/errors.hpp"
#include "secopt/experiments.hpp"
#include "secopt/linalg.hpp"
#include "secopt/roots.hpp"
#include "secopt/sdp.hpp"

using namespace secopt;
using testing_util::cn_vec;
using testing_util::overlap_bound;
using testing_util::random_scenario;
using testing_util::uniform;
namespace ex = secopt::experiments;

namespace tol {
constexpr double kEigRel = 1e-10;
constexpr double kEigResidual = 1e-10;
constexpr double kEigSeconds = 5.0;
constexpr double kQuadGrid = 1e-6;
constexpr double kQuadConstraint = 1e-10;
constexpr double kDfGridBits = 5e-3;
constexpr double kEquality = 1e-8;
constexpr double kCandidateRel = 1e-9;
constexpr double kCjGridBits = 5e-3;
constexpr double kRootMatch = 1e-10;
constexpr double kMonotone = 1e-12;
constexpr double kPowerGridRel = 1e-3;
constexpr double kSdrRel = 1e-6;
constexpr double kKkt = 1e-8;
constexpr double kSdrSeconds = 30.0;
constexpr double kFeasible = 1e-10;
constexpr double kDominance = 1e-9;
constexpr double kSweepSeconds = 600.0;
constexpr double kPowerMonotoneDb = 1e-9;
constexpr double kLandmarkDb = 0.01;
}  // namespace tol

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) detail << "first failure: " << what << "; ";
    pass = pass && ok;
  }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

// 1. Closed-form rank-two eigenpairs against a general Hermitian eigensolver.
void rank_two_eigenpairs(Outcome& out) {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(101);
  double worst_val = 0.0, worst_res = 0.0;
  for (int t = 0; t < 500; ++t) {
    const Eigen::Index n = 2 + t % 15;
    const CVec r = cn_vec(rng, n);
    const CVec s = cn_vec(rng, n);
    const CMat m = outer(r) - outer(s);
    const RankTwoEig two = rank_two_eig(r, s);
    Eigen::SelfAdjointEigenSolver<CMat> es(m);
    const double scale = es.eigenvalues().cwiseAbs().maxCoeff();
    const double e1 = std::abs(two.eta1 - es.eigenvalues()(n - 1)) / scale;
    const double e2 = std::abs(two.eta2 - es.eigenvalues()(0)) / scale;
    const double r1 = (m * two.e1 - two.eta1 * two.e1).norm() / scale;
    const double r2 = (m * two.e2 - two.eta2 * two.e2).norm() / scale;
    worst_val = std::max({worst_val, e1, e2});
    worst_res = std::max({worst_res, r1, r2, std::abs(two.e1.norm() - 1.0),
                          std::abs(two.e2.norm() - 1.0)});
  }
  const double secs = seconds_since(t0);
  out.require(worst_val <= tol::kEigRel, "eigenvalue error");
  out.require(worst_res <= tol::kEigResidual, "eigenvector residual");
  out.require(secs < tol::kEigSeconds, "runtime");
  out.detail << "500 pairs, dims 2-16: max rel eigenvalue err " << worst_val
             << ", max residual " << worst_res << ", " << secs << " s";
}

// 2. Constrained quadratic maximum against a 401x401 grid of feasible points.
// Feasible family: x = sqrt(q) d1 + sqrt(1-q) (cos t e^{i phi} u + sin t w),
// u, w orthonormal and orthogonal to d1, with u in span{d1, d2}.
void constrained_quadratic(Outcome& out) {
  std::mt19937_64 rng(202);
  double worst_gap = -INFINITY, worst_con = 0.0;
  for (int t = 0; t < 200; ++t) {
    const Eigen::Index n = 3 + t % 8;
    const CVec d1 = cn_vec(rng, n).normalized();
    const CVec d2 = cn_vec(rng, n).normalized();
    const double q = uniform(rng, 0.0, 1.0);
    const QuadraticMax res = constrained_quadratic_max(d1, d2, q);
    worst_con = std::max(worst_con, std::abs(std::norm(d1.dot(res.z)) - q));

    const CVec u = (d2 - d1 * d1.dot(d2)).normalized();
    CVec w = cn_vec(rng, n);
    w -= d1 * d1.dot(w) + u * u.dot(w);
    w.normalize();
    const Cplx a = d2.dot(d1) * std::sqrt(q);
    const Cplx b = d2.dot(u) * std::sqrt(1.0 - q);
    const Cplx c = d2.dot(w) * std::sqrt(1.0 - q);
    double grid = 0.0;
    for (int i = 0; i <= 400; ++i) {
      const double th = 0.5 * M_PI * i / 400.0;
      for (int k = 0; k <= 400; ++k) {
        const double ph = 2.0 * M_PI * k / 400.0;
        grid = std::max(grid, std::norm(a + std::cos(th) * std::polar(1.0, ph) * b +
                                        std::sin(th) * c));
      }
    }
    worst_gap = std::max(worst_gap, grid - res.value);
  }
  out.require(worst_gap <= tol::kQuadGrid, "grid beats closed form");
  out.require(worst_con <= tol::kQuadConstraint, "overlap constraint");
  out.detail << "200 instances: max(grid - closed form) " << worst_gap
             << ", max constraint err " << worst_con;
}

// DF rate from an explicitly built relay vector reaching overlap z with the
// eavesdropper and the largest destination overlap allowed by Cauchy-Schwarz.
double df_rate_explicit(const Scenario& sc, double ps, double z) {
  const CVec hh = sc.h.normalized();
  const CVec gh = sc.g[0].normalized();
  const Cplx c = hh.dot(gh);
  const CVec perp = hh - gh * gh.dot(hh);
  CVec u = perp.norm() > 1e-12 ? CVec(perp.normalized()) : CVec(CVec::Zero(hh.size()));
  const Cplx align = std::abs(c) > 0 ? std::conj(c) / std::abs(c) : Cplx(1.0);
  const CVec x = std::sqrt(z) * align * gh + std::sqrt(1.0 - z) * u;
  const CVec w = std::sqrt(sc.p0 - ps) * x;
  const double num = sc.sigma2 + ps * std::norm(sc.h0) + std::norm(sc.h.dot(w));
  const double den = sc.sigma2 + ps * std::norm(sc.g0[0]) + std::norm(sc.g[0].dot(w));
  return 0.5 * std::log2(num / den);
}

// 3. Single-eavesdropper DF rate maximization against a (ps, z) grid.
void df_rate_max(Outcome& out) {
  std::mt19937_64 rng(303);
  double worst = -INFINITY;
  int endpoints = 0;
  for (int t = 0; t < 100; ++t) {
    const Scenario sc = random_scenario(rng, 2 + t % 9, 1);
    const SchemeSolution sol = df_max_secrecy_j1(sc);
    double grid = 0.0;
    for (int i = 0; i <= 200; ++i) {
      const double ps = sc.p0_min + (sc.p0 - sc.p0_min) * i / 200.0;
      for (int k = 0; k <= 200; ++k) grid = std::max(grid, df_rate_explicit(sc, ps, k / 200.0));
    }
    worst = std::max(worst, grid - sol.secrecy_rate);
    if (sol.ps == sc.p0_min || sol.ps == sc.p0) ++endpoints;
  }
  out.require(worst <= tol::kDfGridBits, "grid beats solver");
  out.require(endpoints == 100, "source power off the endpoints");
  out.detail << "100 scenarios: max(grid - solver) " << worst << " bits, ps at an endpoint "
             << endpoints << "/100";
}

// 4. DF power minimization against random feasible candidates.
void df_power_min(Outcome& out) {
  std::mt19937_64 rng(404);
  int solved = 0;
  double worst_eq = 0.0, worst_margin = INFINITY;
  long candidates = 0;
  while (solved < 20) {
    Scenario sc = random_scenario(rng, 2 + solved % 5, 1);
    sc.rs0 = uniform(rng, 0.1, 1.5);
    SchemeSolution sol;
    try {
      sol = df_min_power(sc);
    } catch (const InfeasibleError&) {
      continue;
    }
    ++solved;
    const LinkRates r = df_rates(sc, sol.ps, sol.w);
    worst_eq = std::max(worst_eq, std::abs(r.rd - r.re[0] - sc.rs0));

    const double k = std::pow(4.0, sc.rs0);
    const double ps_hi = std::max(sc.p0, 2.0 * sol.total_power);
    const Eigen::Index n = sc.n_relays();
    std::normal_distribution<double> nd(0.0, 1.0);
    std::uniform_real_distribution<double> ups(sc.p0_min, ps_hi);
    CVec x(n);
    for (int c = 0; c < 1000000; ++c) {
      for (Eigen::Index i = 0; i < n; ++i) x[i] = Cplx(nd(rng), nd(rng));
      x.normalize();
      const double ps = ups(rng);
      // Relay power t along x that puts the secrecy rate exactly at rs0.
      const double coef = std::norm(sc.h.dot(x)) - k * std::norm(sc.g[0].dot(x));
      const double rhs = (k - 1.0) * sc.sigma2 + ps * (k * std::norm(sc.g0[0]) - std::norm(sc.h0));
      double t;
      if (rhs == 0.0) {
        t = 0.0;
      } else if (coef == 0.0) {
        continue;
      } else {
        t = rhs / coef;
      }
      if (!(t >= 0.0)) continue;
      ++candidates;
      worst_margin = std::min(worst_margin, (ps + t) / sol.total_power - 1.0);
    }
  }
  out.require(worst_eq <= tol::kEquality, "secrecy equality");
  out.require(worst_margin >= -tol::kCandidateRel, "a candidate used less power");
  out.detail << "20 instances, " << candidates << " feasible candidates: max equality err "
             << worst_eq << ", min(candidate / solver - 1) " << worst_margin;
}

double eta_of(const Scenario& sc) {
  return std::abs(sc.h.normalized().dot(sc.g[0].normalized()));
}

double cj_rate_oracle(const Scenario& sc, double ps, double z) {
  const double relay = sc.p0 - ps;
  const double jam_d = relay * sc.h.squaredNorm() * z;
  const double jam_e = relay * sc.g[0].squaredNorm() * overlap_bound(eta_of(sc), z);
  return std::log2(1.0 + ps * std::norm(sc.h0) / (jam_d + sc.sigma2)) -
         std::log2(1.0 + ps * std::norm(sc.g0[0]) / (jam_e + sc.sigma2));
}

double cj_power_oracle(const Scenario& sc, double gamma, double z) {
  const double k = std::exp2(sc.rs0);
  const double x = std::norm(sc.h0) / (gamma * sc.h.squaredNorm() * z + sc.sigma2);
  const double y = std::norm(sc.g0[0]) /
                   (gamma * sc.g[0].squaredNorm() * overlap_bound(eta_of(sc), z) + sc.sigma2);
  const double den = x - k * y;
  return den > 0.0 ? (k - 1.0) / den + gamma : INFINITY;
}

// 5. Jamming rate maximization: alternating solver quality and root checks.
void cj_rate_max(Outcome& out) {
  std::mt19937_64 rng(505);
  int done = 0, roots = 0;
  double worst_grid = -INFINITY, worst_sub = -INFINITY, worst_root = 0.0, worst_mono = 0.0;
  bool concave = true;
  while (done < 100) {
    const Scenario sc = random_scenario(rng, 2 + rng() % 6, 1);
    if (!cj_positivity(sc).positive) continue;
    ++done;
    const SchemeSolution sol = cj_max_secrecy(sc);
    const SchemeSolution sub = cj_suboptimal_maxrate(sc);
    const CjAlphas al = cj_rate_alphas(sc);
    for (const AltIterTrace& tr : sol.traces) {
      for (std::size_t k = 0; k < tr.steps.size(); ++k) {
        if (k > 0) {
          worst_mono = std::max(worst_mono, tr.steps[k - 1].objective - tr.steps[k].objective);
        }
        const double ps = tr.steps[k].first;
        if (!(ps > 0.0 && ps < sc.p0)) continue;
        const ZInterval iv = cj_rate_interval(al, sc.p0, ps);
        if (iv.empty()) continue;
        const double z = tr.steps[k].z;
        auto deriv = [&](double v) { return cj_rate_dz(al, sc.p0, ps, v).d1; };
        worst_root = std::max(worst_root, std::abs(z - bisect(deriv, iv.lo, iv.hi, true).x));
        concave = concave && cj_rate_dz(al, sc.p0, ps, z).d2 < 0.0;
        ++roots;
      }
    }
    const double obj = sol.diagnostics.at("objective");
    worst_sub = std::max(worst_sub, sub.diagnostics.at("objective") - obj);
    double grid = -INFINITY;
    for (int i = 0; i <= 200; ++i) {
      for (int k = 0; k <= 200; ++k) {
        grid = std::max(grid, cj_rate_oracle(sc, sc.p0 * i / 200.0, k / 200.0));
      }
    }
    worst_grid = std::max(worst_grid, grid - obj);
  }
  out.require(worst_mono <= tol::kMonotone, "trace not monotone");
  out.require(worst_grid <= tol::kCjGridBits, "grid beats solver");
  out.require(worst_sub <= tol::kDominance, "suboptimal beats solver");
  out.require(worst_root <= tol::kRootMatch, "Newton and bisection roots differ");
  out.require(concave, "second derivative not negative at a root");
  out.detail << "100 instances, " << roots << " roots: max(grid - solver) " << worst_grid
             << " bits, max(sub - solver) " << worst_sub << ", max root diff " << worst_root
             << ", max trace drop " << worst_mono;
}

// 6. Jamming power minimization.
void cj_power_min(Outcome& out) {
  std::mt19937_64 rng(606);
  int solved = 0, roots = 0, jamming = 0;
  double worst_grid = -INFINITY, worst_sub = -INFINITY, worst_root = 0.0, worst_mono = 0.0;
  bool concave = true;
  while (solved < 100) {
    Scenario sc = random_scenario(rng, 2 + rng() % 6, 1);
    sc.rs0 = uniform(rng, 0.2, 1.5);
    SchemeSolution sol;
    try {
      sol = cj_min_power(sc);
    } catch (const InfeasibleError&) {
      continue;
    }
    ++solved;
    if (sol.branch == Branch::kAlternating) ++jamming;
    const CjAlphas al = cj_power_alphas(sc);
    for (const AltIterTrace& tr : sol.traces) {
      for (std::size_t k = 0; k < tr.steps.size(); ++k) {
        if (k > 0) {
          const double prev = tr.steps[k - 1].objective;
          worst_mono = std::max(worst_mono, (tr.steps[k].objective - prev) / prev);
        }
        const double gamma = tr.steps[k].first;
        if (!(gamma > 0.0)) continue;
        const ZInterval iv = cj_power_interval(al, gamma);
        if (iv.empty()) continue;
        const double z = tr.steps[k].z;
        auto deriv = [&](double v) { return cj_fgamma_dz(al, gamma, v).d1; };
        worst_root = std::max(worst_root, std::abs(z - bisect(deriv, iv.lo, iv.hi, true).x));
        concave = concave && cj_fgamma_dz(al, gamma, z).d2 < 0.0;
        ++roots;
      }
    }
    double sub_total = INFINITY;
    try {
      sub_total = cj_suboptimal_minpower(sc).total_power;
    } catch (const InfeasibleError&) {
    }
    worst_sub = std::max(worst_sub, (sol.total_power - sub_total) / sol.total_power);
    const double span = 2.0 * (std::isfinite(sub_total) ? sub_total : sol.total_power);
    double grid = INFINITY;
    for (int i = 0; i <= 200; ++i) {
      for (int k = 0; k <= 200; ++k) {
        grid = std::min(grid, cj_power_oracle(sc, span * i / 200.0, k / 200.0));
      }
    }
    worst_grid = std::max(worst_grid, sol.total_power / grid - 1.0);
  }
  out.require(worst_mono <= tol::kMonotone, "power trace increased");
  out.require(worst_grid <= tol::kPowerGridRel, "grid beats solver");
  out.require(worst_sub <= tol::kDominance, "suboptimal beats solver");
  out.require(worst_root <= tol::kRootMatch, "Newton and bisection roots differ");
  out.require(concave, "second derivative not negative at a root");
  out.detail << "100 instances (" << jamming << " jamming), " << roots
             << " roots: max(solver/grid - 1) " << worst_grid << ", max rel(solver - sub) "
             << worst_sub << ", max root diff " << worst_root;
}

double max_quad(const std::vector<CMat>& a, const CVec& v) {
  double t = 0.0;
  for (const auto& m : a) t = std::max(t, v.dot(m * v).real());
  return t;
}

// 7. Two-eavesdropper relaxation is tight.
void sdr_two_eavesdroppers(Outcome& out) {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(707);
  double worst_gap = 0.0, worst_kkt = 0.0;
  int reduced = 0;
  for (int t = 0; t < 50; ++t) {
    const Scenario sc = random_scenario(rng, 2 + t % 9, 2);
    const QcqpInstance q = build_qcqp(sc, uniform(rng, sc.p0_min, sc.p0));
    const sdp::SdpResult r = sdp::solve(q.a);
    worst_kkt = std::max({worst_kkt, r.primal_residual, r.dual_residual,
                          r.complementarity / (1.0 + r.objective)});
    const QcqpSolution s = solve_qcqp(q, 1);
    if (s.method == "rank_reduction") ++reduced;
    worst_gap = std::max(worst_gap, std::abs(s.value - s.sdr_value) / s.sdr_value);
    out.require(std::abs(max_quad(q.a, s.v) - 1.0) <= tol::kFeasible, "extracted point infeasible");
  }
  const double secs = seconds_since(t0);
  out.require(worst_gap <= tol::kSdrRel, "rank-one value differs from relaxation");
  out.require(worst_kkt <= tol::kKkt, "KKT residual");
  out.require(secs < tol::kSdrSeconds, "runtime");
  out.detail << "50 instances (" << reduced << " by rank reduction): max rel gap " << worst_gap
             << ", max KKT residual " << worst_kkt << ", " << secs << " s";
}

// 8. Randomized recovery for three or more eavesdroppers, and dominance of the
// full solver over the nulling baseline.
void many_eavesdroppers(Outcome& out) {
  std::mt19937_64 rng(808);
  double worst_feas = 0.0, worst_bound = -INFINITY, worst_dom = -INFINITY, worst_cert = 0.0;
  int randomized = 0;
  for (int t = 0; t < 200; ++t) {
    const std::size_t jn = 3 + t % 5;
    const Scenario sc = random_scenario(rng, 10, jn);
    QcqpInstance q;
    if (t < 100) {
      q = build_qcqp(sc, uniform(rng, sc.p0_min, sc.p0));
    } else {
      // Generic constraint sets, where the relaxation optimum is rarely rank one.
      for (std::size_t j = 0; j < jn; ++j) q.a.push_back(testing_util::random_hpd(rng, 10));
      q.rh_inv_sqrt = CMat::Identity(10, 10);
    }
    const QcqpSolution s = solve_qcqp(q, 9000 + t);
    if (s.method == "randomization") ++randomized;
    worst_feas = std::max(worst_feas, max_quad(q.a, s.v) - 1.0);
    // The dual point certifies the bound: sum y_j A_j - I must be PSD.
    const sdp::SdpResult r = sdp::solve(q.a);
    CMat cert = -CMat::Identity(q.a[0].rows(), q.a[0].cols());
    double ysum = 0.0;
    for (std::size_t j = 0; j < q.a.size(); ++j) {
      cert += r.duals[j] * q.a[j];
      ysum += r.duals[j];
    }
    Eigen::SelfAdjointEigenSolver<CMat> es(cert, Eigen::EigenvaluesOnly);
    worst_cert = std::max(worst_cert, -es.eigenvalues()(0) / ysum);
    worst_bound = std::max(worst_bound, s.value - ysum * (1.0 + 1e-9));

    if (t >= 100) continue;
    const SchemeSolution opt = df_multi_max(sc);
    const SchemeSolution sub = df_multi_suboptimal(sc);
    worst_dom = std::max(worst_dom, sub.secrecy_rate - opt.secrecy_rate);
  }
  out.require(randomized > 0, "randomization never exercised");
  out.require(worst_feas <= tol::kFeasible, "candidate infeasible");
  out.require(worst_bound <= 0.0, "candidate above the relaxation bound");
  out.require(worst_cert <= tol::kKkt, "dual certificate not PSD");
  out.require(worst_dom <= tol::kDominance, "nulling baseline beats solver");
  out.detail << "200 beam problems, N=10, J=3..7 (" << randomized
             << " randomized): max constraint excess " << worst_feas
             << ", max(value - bound) " << worst_bound << "; 100 scenarios max(sub - opt) "
             << worst_dom << " bits";
}

ex::SweepSpec fig4_spec() {
  ex::SweepSpec s;
  s.name = "fig4";
  s.metric = ex::Metric::kMaxRate;
  s.axis = ex::Axis::kDsd;
  for (int d = 10; d <= 100; d += 5) s.axis_values.push_back(d);
  s.schemes = {ex::Scheme::kDf, ex::Scheme::kCj, ex::Scheme::kCjSub, ex::Scheme::kDirect};
  s.geometry.d_se = {50.0};
  s.geometry.n_relays = 10;
  s.geometry.n_eaves = 1;
  s.power.p0_dbm = 30.0;
  s.trials = 100;
  return s;
}

ex::SweepSpec fig8_spec() {
  ex::SweepSpec s;
  s.name = "fig8";
  s.metric = ex::Metric::kMinPower;
  s.axis = ex::Axis::kDse;
  for (int d = 25; d <= 100; d += 5) s.axis_values.push_back(d);
  s.schemes = {ex::Scheme::kDf, ex::Scheme::kCj, ex::Scheme::kDirect};
  s.geometry.d_sd = 50.0;
  s.trials = 100;
  return s;
}

// 9. Rate-vs-destination-distance sweep orderings.
void rate_sweep(Outcome& out) {
  const auto t0 = Clock::now();
  const ex::SweepResult r = ex::run_sweep(fig4_spec());
  const double secs = seconds_since(t0);
  const auto& x = r.spec.axis_values;
  const auto& df = r.series[0].points;
  const auto& cj = r.series[1].points;
  const auto& direct = r.series[3].points;
  double at60_df = NAN, at60_cj = NAN;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const std::string at = " at d_sd=" + std::to_string(int(x[i]));
    out.require(df[i].mean >= cj[i].mean, "DF below CJ" + at);
    out.require(cj[i].mean >= direct[i].mean, "CJ below direct" + at);
    if (x[i] > 50.0) out.require(direct[i].mean == 0.0, "direct rate positive" + at);
    if (x[i] == 60.0) {
      at60_df = df[i].mean;
      at60_cj = cj[i].mean;
    }
  }
  out.require(at60_df > 0.0 && at60_cj > 0.0, "no positive rate at 60 m");
  out.require(r.failures.empty(), "trial failures");
  out.require(secs < tol::kSweepSeconds, "runtime");
  out.detail << "19 points x 100 trials: DF " << df.front().mean << " -> " << df.back().mean
             << ", at 60 m DF " << at60_df << " CJ " << at60_cj << " bits, " << secs << " s";
}

// 10. Power-vs-eavesdropper-distance sweep.
void power_sweep(Outcome& out) {
  const ex::SweepResult r = ex::run_sweep(fig8_spec());
  const auto& x = r.spec.axis_values;
  const auto& df = r.series[0].points;
  const auto& cj = r.series[1].points;
  const auto& direct = r.series[2].points;
  for (std::size_t i = 1; i < x.size(); ++i) {
    out.require(df[i].mean <= df[i - 1].mean + tol::kPowerMonotoneDb,
                "DF power rose at d_se=" + std::to_string(int(x[i])));
  }
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] < r.spec.geometry.d_sd) {
      out.require(direct[i].feasible == 0,
                  "direct feasible at d_se=" + std::to_string(int(x[i])));
    }
  }
  out.require(r.failures.empty(), "trial failures");
  double direct_from = NAN, cj_meets = NAN;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (std::isnan(direct_from) && direct[i].feasible_fraction() == 1.0) direct_from = x[i];
    if (std::isnan(cj_meets) && direct[i].feasible == direct[i].trials &&
        std::abs(cj[i].mean - direct[i].mean) <= tol::kLandmarkDb) {
      cj_meets = x[i];
    }
  }
  out.detail << "DF " << df.front().mean << " -> " << df.back().mean
             << " dBm; landmarks (reported only): direct feasible from d_se=" << direct_from
             << " m, CJ equals direct from d_se=" << cj_meets << " m";
}

// 11. Byte-identical reruns, including a different worker count.
void determinism(Outcome& out) {
  ex::SweepSpec multi;
  multi.name = "multi";
  multi.axis = ex::Axis::kNEaves;
  multi.axis_values = {2, 4};
  multi.schemes = {ex::Scheme::kDf, ex::Scheme::kDfSub, ex::Scheme::kDirect};
  multi.geometry.d_sd = 25.0;
  multi.trials = 10;
  int compared = 0;
  for (ex::SweepSpec s : {fig4_spec(), fig8_spec(), multi}) {
    s.trials = std::min(s.trials, 20);
    const std::string a = ex::to_csv(ex::run_sweep(s, 1));
    const std::string b = ex::to_csv(ex::run_sweep(s, 4));
    const std::string c = ex::to_csv(ex::run_sweep(s));
    out.require(a == b && b == c, s.name + " differs between runs");
    out.require(ex::to_svg(ex::run_sweep(s, 2)) == ex::to_svg(ex::run_sweep(s, 3)),
                s.name + " svg differs");
    ++compared;
  }
  out.detail << compared << " sweeps rerun with 1, 4 and default workers: identical CSV and SVG";
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria = {
      {"rank-two eigenpairs match a general eigensolver", rank_two_eigenpairs},
      {"constrained quadratic maximum beats a span grid", constrained_quadratic},
      {"DF rate maximum (one eavesdropper) vs grid", df_rate_max},
      {"DF minimum power meets the target, beats random candidates", df_power_min},
      {"CJ rate maximization: monotone, vs grid and suboptimal", cj_rate_max},
      {"CJ power minimization: monotone, vs grid and suboptimal", cj_power_min},
      {"relaxation is tight for two eavesdroppers", sdr_two_eavesdroppers},
      {"randomized beams for 3-7 eavesdroppers", many_eavesdroppers},
      {"rate sweep over destination distance", rate_sweep},
      {"power sweep over eavesdropper distance", power_sweep},
      {"sweeps are deterministic", determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome out;
    const auto t0 = Clock::now();
    try {
      criteria[i].second(out);
    } catch (const std::exception& e) {
      out.pass = false;
      out.detail << "exception: " << e.what();
    }
    std::printf("%s  %2zu  %-62s  [%.2fs] %s\n", out.pass ? "PASS" : "FAIL", i + 1,
                criteria[i].first.c_str(), seconds_since(t0), out.detail.str().c_str());
    std::fflush(stdout);
    if (!out.pass) ++failed;
  }
  std::printf("%d of %zu criteria passed\n", int(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
