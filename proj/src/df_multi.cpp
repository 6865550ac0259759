#include "secopt/df_multi.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <limits>
#include <random>
#include <sstream>

#include "secopt/df_opt.hpp"
#include "secopt/errors.hpp"
#include "secopt/hash.hpp"

namespace secopt {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kObjTol = 1e-10;
// Relative slack for the monotonicity check of exact alternating steps.
constexpr double kExactSlack = 1e-9;

double quad_form(const CMat& a, const CVec& v) { return v.dot(a * v).real(); }

double max_constraint(const std::vector<CMat>& a, const CVec& v) {
  double t = 0.0;
  for (const auto& m : a) t = std::max(t, quad_form(m, v));
  return t;
}

CVec scale_to_boundary(const std::vector<CMat>& a, CVec v) {
  const double t = max_constraint(a, v);
  if (!(t > 0.0)) throw NumericalError("solve_qcqp: candidate has no constraint energy");
  return v / std::sqrt(t);
}

double bits(double ratio) { return 0.5 * std::log2(ratio); }

void require_multi(const Scenario& sc, const char* who) {
  sc.validate();
  if (sc.n_eaves() == 0) throw ContractError(std::string(who) + ": no eavesdroppers");
}

}  // namespace

PolygonalEnvelope upper_envelope(const std::vector<AffineLine>& lines, double lo, double hi) {
  if (lines.empty()) throw ContractError("upper_envelope: no lines");
  if (!(lo <= hi)) throw ContractError("upper_envelope: empty interval");
  const double tie = 1e-14 * std::max(1.0, std::abs(hi - lo));

  auto pick = [&](double t) {
    std::size_t best = 0;
    for (std::size_t k = 1; k < lines.size(); ++k) {
      const double vk = lines[k].at(t);
      const double vb = lines[best].at(t);
      const double scale = std::max({1.0, std::abs(vk), std::abs(vb)});
      if (vk > vb + 1e-15 * scale ||
          (std::abs(vk - vb) <= 1e-15 * scale && lines[k].slope > lines[best].slope)) {
        best = k;
      }
    }
    return best;
  };

  PolygonalEnvelope env;
  env.breakpoints.push_back(lo);
  std::size_t cur = pick(lo);
  double t = lo;
  while (true) {
    env.active_index.push_back(cur);
    double next = hi;
    std::size_t next_line = cur;
    for (std::size_t k = 0; k < lines.size(); ++k) {
      if (!(lines[k].slope > lines[cur].slope)) continue;
      const double tk =
          (lines[cur].intercept - lines[k].intercept) / (lines[k].slope - lines[cur].slope);
      if (!(tk > t + tie) || tk >= hi - tie) continue;
      if (tk < next - tie || (std::abs(tk - next) <= tie && lines[k].slope > lines[next_line].slope)) {
        next = std::min(next, tk);
        next_line = k;
      }
    }
    if (next_line == cur) break;
    env.breakpoints.push_back(next);
    cur = next_line;
    t = next;
  }
  if (hi > lo) env.breakpoints.push_back(hi);
  return env;
}

std::vector<AffineLine> eavesdropper_lines(const Scenario& sc, const CVec& x) {
  std::vector<AffineLine> out;
  out.reserve(sc.n_eaves());
  for (std::size_t j = 0; j < sc.n_eaves(); ++j) {
    const double q = std::norm(sc.g[j].dot(x));
    out.push_back({sc.p0 * q, std::norm(sc.g0[j]) - q});
  }
  return out;
}

double df_multi_ratio(const Scenario& sc, double ps, const CVec& x) {
  const double relay = sc.p0 - ps;
  const double num = sc.sigma2 + ps * std::norm(sc.h0) + relay * std::norm(sc.h.dot(x));
  double den = 0.0;
  for (const auto& line : eavesdropper_lines(sc, x)) den = std::max(den, line.at(ps));
  return num / (sc.sigma2 + den);
}

double ps_polygonal_search(const Scenario& sc, const CVec& x) {
  require_multi(sc, "ps_polygonal_search");
  if (std::abs(x.norm() - 1.0) > 1e-9) throw ContractError("ps_polygonal_search: x is not unit");
  const PolygonalEnvelope env = upper_envelope(eavesdropper_lines(sc, x), sc.p0_min, sc.p0);
  double best_ps = env.breakpoints.front();
  double best = df_multi_ratio(sc, best_ps, x);
  for (std::size_t k = 1; k < env.breakpoints.size(); ++k) {
    const double ps = env.breakpoints[k];
    const double r = df_multi_ratio(sc, ps, x);
    if (r > best) {
      best = r;
      best_ps = ps;
    }
  }
  return best_ps;
}

QcqpInstance build_qcqp(const Scenario& sc, double ps) {
  require_multi(sc, "build_qcqp");
  if (ps < sc.p0_min || ps > sc.p0) throw ContractError("build_qcqp: ps outside [p0_min, p0]");
  const Eigen::Index n = sc.n_relays();
  const CMat eye = CMat::Identity(n, n);
  const double relay = sc.p0 - ps;
  const CMat rh = (sc.sigma2 + ps * std::norm(sc.h0)) * eye + relay * outer(sc.h);
  QcqpInstance q;
  q.rh_inv_sqrt = herm_inv_sqrt(rh);
  for (std::size_t j = 0; j < sc.n_eaves(); ++j) {
    const CMat rg = (sc.sigma2 + ps * std::norm(sc.g0[j])) * eye + relay * outer(sc.g[j]);
    const CMat aj = q.rh_inv_sqrt * rg * q.rh_inv_sqrt;
    q.a.push_back(0.5 * (aj + aj.adjoint()));
  }
  return q;
}

CVec qcqp_direction(const QcqpInstance& q, const CVec& v) {
  const CVec x = q.rh_inv_sqrt * v;
  const double nx = x.norm();
  if (!(nx > 0.0)) throw NumericalError("qcqp_direction: zero vector");
  return x / nx;
}

CMat reduce_rank(const std::vector<CMat>& a, CMat v) {
  const auto jn = static_cast<Eigen::Index>(a.size());
  while (v.cols() > 1 && v.cols() * v.cols() > jn + 1) {
    const Eigen::Index r = v.cols();
    std::vector<CMat> proj;
    for (const auto& m : a) proj.push_back(v.adjoint() * m * v);
    proj.push_back(v.adjoint() * v);

    // Real basis of r x r Hermitian matrices.
    std::vector<CMat> basis;
    for (Eigen::Index k = 0; k < r; ++k) {
      CMat b = CMat::Zero(r, r);
      b(k, k) = 1.0;
      basis.push_back(b);
      for (Eigen::Index l = k + 1; l < r; ++l) {
        CMat re = CMat::Zero(r, r);
        re(k, l) = re(l, k) = 1.0;
        basis.push_back(re);
        CMat im = CMat::Zero(r, r);
        im(k, l) = Cplx(0.0, 1.0);
        im(l, k) = Cplx(0.0, -1.0);
        basis.push_back(im);
      }
    }
    Eigen::MatrixXd c(proj.size(), basis.size());
    for (std::size_t i = 0; i < proj.size(); ++i) {
      for (std::size_t p = 0; p < basis.size(); ++p) {
        c(i, p) = (proj[i] * basis[p]).trace().real();
      }
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(c, Eigen::ComputeFullV);
    const Eigen::VectorXd coef = svd.matrixV().col(svd.matrixV().cols() - 1);
    CMat delta = CMat::Zero(r, r);
    for (std::size_t p = 0; p < basis.size(); ++p) delta += coef(p) * basis[p];

    Eigen::SelfAdjointEigenSolver<CMat> ed(delta, Eigen::EigenvaluesOnly);
    double top = ed.eigenvalues()(r - 1);
    if (std::abs(ed.eigenvalues()(0)) > top) {
      delta = -delta;
      top = -ed.eigenvalues()(0);
    }
    const CMat t = CMat::Identity(r, r) - delta / top;
    Eigen::SelfAdjointEigenSolver<CMat> et(0.5 * (t + t.adjoint()));
    const double tmax = et.eigenvalues()(r - 1);
    std::vector<Eigen::Index> keep;
    for (Eigen::Index k = 0; k < r; ++k) {
      if (et.eigenvalues()(k) > 1e-12 * tmax) keep.push_back(k);
    }
    if (static_cast<Eigen::Index>(keep.size()) >= r) {
      throw NumericalError("reduce_rank: rank did not drop");
    }
    CMat next(v.rows(), static_cast<Eigen::Index>(keep.size()));
    for (std::size_t i = 0; i < keep.size(); ++i) {
      next.col(static_cast<Eigen::Index>(i)) =
          v * et.eigenvectors().col(keep[i]) * std::sqrt(et.eigenvalues()(keep[i]));
    }
    v = next;
  }
  return v;
}

QcqpSolution solve_qcqp(const QcqpInstance& q, std::uint64_t seed, int samples) {
  if (q.a.empty()) throw ContractError("solve_qcqp: no constraints");
  QcqpSolution out;
  if (q.a.size() == 1) {
    const HermEig e = herm_eig(q.a[0]);
    const Eigen::Index last = e.values.size() - 1;
    const double lmin = e.values[last];
    if (!(lmin > 0.0)) throw ContractError("solve_qcqp: constraint not positive definite");
    out.v = e.vectors.col(last) / std::sqrt(lmin);
    out.value = out.v.squaredNorm();
    out.sdr_value = 1.0 / lmin;
    out.tight = true;
    out.method = "eigen";
    return out;
  }

  const sdp::SdpResult rel = sdp::solve(q.a);
  out.sdp_iterations = rel.iterations;
  if (rel.status != sdp::Status::kOptimal) {
    std::ostringstream msg;
    msg << "solve_qcqp: relaxation " << sdp::to_string(rel.status) << " after "
        << rel.iterations << " iterations, gap " << rel.gap << ", duals [";
    for (std::size_t j = 0; j < rel.duals.size(); ++j) msg << (j ? ", " : "") << rel.duals[j];
    msg << "]";
    throw NumericalError(msg.str());
  }
  out.sdr_value = 0.0;
  for (double y : rel.duals) out.sdr_value += y;

  const HermEig e = herm_eig(0.5 * (rel.z_opt + rel.z_opt.adjoint()));
  const double l1 = e.values[0];
  out.rank_ratio = std::max(0.0, e.values[1]) / l1;

  CVec v;
  if (out.rank_ratio < kRankOneRatio) {
    v = std::sqrt(l1) * e.vectors.col(0);
    out.method = "rank_one";
    out.tight = true;
  } else if (q.a.size() == 2) {
    Eigen::Index r = 0;
    while (r < e.values.size() && e.values[r] > 1e-9 * l1) ++r;
    CMat factor(e.vectors.rows(), r);
    for (Eigen::Index k = 0; k < r; ++k) factor.col(k) = std::sqrt(e.values[k]) * e.vectors.col(k);
    v = reduce_rank(q.a, factor).col(0);
    out.method = "rank_reduction";
    out.tight = true;
  } else {
    const Eigen::Index n = e.values.size();
    CMat factor(n, n);
    for (Eigen::Index k = 0; k < n; ++k) {
      factor.col(k) = std::sqrt(std::max(0.0, e.values[k])) * e.vectors.col(k);
    }
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> nd(0.0, std::sqrt(0.5));
    double best = -1.0;
    CVec xi(n);
    for (int l = 0; l < samples; ++l) {
      for (Eigen::Index i = 0; i < n; ++i) xi[i] = Cplx(nd(rng), nd(rng));
      const CVec cand = scale_to_boundary(q.a, factor * xi);
      const double val = cand.squaredNorm();
      if (val > best) {
        best = val;
        v = cand;
      }
    }
    out.method = "randomization";
    out.tight = false;
  }
  out.v = scale_to_boundary(q.a, v);
  out.value = out.v.squaredNorm();
  return out;
}

SchemeSolution df_multi_suboptimal(const Scenario& sc) {
  require_multi(sc, "df_multi_suboptimal");
  const Eigen::Index n = sc.n_relays();
  const auto jn = static_cast<Eigen::Index>(sc.n_eaves());
  if (n <= jn) {
    throw InsufficientDofError("df_multi_suboptimal: need more relays (" + std::to_string(n) +
                               ") than eavesdroppers (" + std::to_string(jn) + ")");
  }
  CMat gmat(n, jn);
  for (Eigen::Index j = 0; j < jn; ++j) gmat.col(j) = sc.g[static_cast<std::size_t>(j)];
  Eigen::JacobiSVD<CMat> svd(gmat, Eigen::ComputeFullU);
  const RVec& sv = svd.singularValues();
  Eigen::Index rank = 0;
  while (rank < sv.size() && sv[rank] > 1e-12 * sv[0]) ++rank;
  const CMat e = svd.matrixU().rightCols(n - rank);

  const CVec eh = e.adjoint() * sc.h;
  const double eh2 = eh.squaredNorm();
  double g0max = 0.0;
  for (const auto& g0 : sc.g0) g0max = std::max(g0max, std::norm(g0));
  auto f2 = [&](double ps) {
    return (sc.sigma2 + ps * std::norm(sc.h0) + (sc.p0 - ps) * eh2) / (sc.sigma2 + ps * g0max);
  };

  SchemeSolution sol;
  sol.branch = Branch::kNulling;
  const double f_pmin = f2(sc.p0_min);
  const double f_p0 = f2(sc.p0);
  sol.ps = f_p0 > f_pmin ? sc.p0 : sc.p0_min;
  const CVec dir = eh2 > 0.0 ? CVec(e * eh / std::sqrt(eh2)) : CVec(e.col(0));
  sol.w = std::sqrt(sc.p0 - sol.ps) * dir;
  sol.total_power = sol.ps + sol.w.squaredNorm();
  sol.secrecy_rate = secrecy_rate(df_rates(sc, sol.ps, sol.w));
  sol.diagnostics["f2_pmin"] = f_pmin;
  sol.diagnostics["f2_p0"] = f_p0;
  sol.diagnostics["null_dim"] = static_cast<double>(n - rank);
  return sol;
}

std::uint64_t scenario_seed(const Scenario& sc) {
  std::uint64_t h = fnv1a({});
  auto feed = [&](double x) {
    char b[sizeof x];
    std::memcpy(b, &x, sizeof x);
    h = fnv1a({b, sizeof b}, h);
  };
  auto feed_c = [&](Cplx c) {
    feed(c.real());
    feed(c.imag());
  };
  feed_c(sc.h0);
  for (Eigen::Index i = 0; i < sc.h.size(); ++i) feed_c(sc.h[i]);
  for (std::size_t j = 0; j < sc.n_eaves(); ++j) {
    feed_c(sc.g0[j]);
    for (Eigen::Index i = 0; i < sc.g[j].size(); ++i) feed_c(sc.g[j][i]);
  }
  feed(sc.sigma2);
  feed(sc.p0);
  feed(sc.p0_min);
  return h;
}

namespace {

struct StartResult {
  double ps = 0.0;
  CVec x;
  double ratio = 0.0;
  AltIterTrace trace;
  double last_bound = kNaN;
  bool all_tight = true;
  int grp_retries = 0;
};

StartResult run_start(const Scenario& sc, double ps_start, std::uint64_t base_seed,
                      std::uint64_t& counter) {
  StartResult r;
  r.trace.seed = ps_start;
  // The beam subproblem degenerates at ps = p0 (no relay power), so the
  // first beam for that start is taken just inside the interval.
  const double ps_beam =
      ps_start < sc.p0 ? ps_start : sc.p0_min + (1.0 - 1e-3) * (sc.p0 - sc.p0_min);

  auto beam_at = [&](double ps, bool& tight, double& bound) {
    const QcqpInstance q = build_qcqp(sc, ps);
    const QcqpSolution s = solve_qcqp(q, mix64(base_seed ^ mix64(counter++)));
    tight = s.tight;
    bound = s.sdr_value;
    return qcqp_direction(q, s.v);
  };

  bool tight = true;
  double bound = kNaN;
  r.x = beam_at(ps_beam, tight, bound);
  r.all_tight = tight;
  r.ps = ps_start;
  r.ratio = df_multi_ratio(sc, r.ps, r.x);
  r.trace.steps.push_back({r.ps, kNaN, bits(r.ratio), tight ? kNaN : bits(bound)});

  for (int it = 1; it <= kDfMultiMaxIter; ++it) {
    r.trace.iterations = it;
    const double prev = r.ratio;

    const double ps_new = ps_polygonal_search(sc, r.x);
    const double after_ps = df_multi_ratio(sc, ps_new, r.x);
    if (after_ps < prev * (1.0 - 1e-12)) {
      throw InternalError("df_multi_max: source-power step decreased the objective");
    }
    r.ps = ps_new;
    r.ratio = std::max(after_ps, prev);
    if (r.ps >= sc.p0) {
      r.trace.steps.push_back({r.ps, kNaN, bits(r.ratio), kNaN});
      r.trace.converged = true;
      break;
    }

    CVec x_new = beam_at(r.ps, tight, bound);
    double cand = df_multi_ratio(sc, r.ps, x_new);
    bool stop = false;
    if (tight) {
      if (cand < r.ratio * (1.0 - kExactSlack)) {
        throw InternalError("df_multi_max: exact beam step decreased the objective");
      }
    } else {
      r.all_tight = false;
      int retries = 0;
      while (cand < r.ratio && retries < kGrpRetries) {
        ++retries;
        x_new = beam_at(r.ps, tight, bound);
        cand = df_multi_ratio(sc, r.ps, x_new);
      }
      r.grp_retries += retries;
      stop = cand < r.ratio;
    }
    if (cand >= r.ratio) {
      r.x = x_new;
      r.ratio = cand;
    }
    r.last_bound = tight ? kNaN : bits(bound);
    r.trace.steps.push_back({r.ps, kNaN, bits(r.ratio), r.last_bound});
    if (stop) break;
    if (std::abs(bits(r.ratio) - bits(prev)) < kObjTol) {
      r.trace.converged = true;
      break;
    }
  }
  return r;
}

}  // namespace

SchemeSolution df_multi_max(const Scenario& sc, std::optional<std::uint64_t> seed) {
  require_multi(sc, "df_multi_max");
  if (sc.n_eaves() == 1) {
    SchemeSolution sol = df_max_secrecy_j1(sc);
    sol.notes.emplace_back("single eavesdropper: closed-form solution");
    return sol;
  }
  const std::uint64_t base = seed.value_or(scenario_seed(sc));
  std::vector<double> starts{sc.p0_min};
  if (sc.p0 > sc.p0_min) {
    starts.push_back(sc.p0);
    starts.push_back(0.5 * (sc.p0_min + sc.p0));
  }

  SchemeSolution sol;
  std::uint64_t counter = 0;
  std::optional<StartResult> best;
  int total_iter = 0;
  bool all_converged = true;
  for (double s : starts) {
    StartResult r = run_start(sc, s, base, counter);
    total_iter += r.trace.iterations;
    all_converged = all_converged && r.trace.converged;
    sol.traces.push_back(r.trace);
    if (!best || r.ratio > best->ratio) best = std::move(r);
  }

  sol.ps = best->ps;
  sol.w = std::sqrt(sc.p0 - sol.ps) * best->x;
  sol.branch = sol.ps >= sc.p0 ? Branch::kDirect : Branch::kAlternating;
  sol.total_power = sol.ps + sol.w.squaredNorm();
  sol.secrecy_rate = secrecy_rate(df_rates(sc, sol.ps, sol.w));
  sol.iterations = total_iter;
  sol.converged = all_converged;
  sol.diagnostics["objective"] = bits(best->ratio);
  sol.diagnostics["relaxation_tight"] = best->all_tight ? 1.0 : 0.0;
  sol.diagnostics["grp_retries"] = best->grp_retries;
  if (!std::isnan(best->last_bound)) sol.diagnostics["sdr_bound"] = best->last_bound;
  sol.diagnostics["seed"] = static_cast<double>(base >> 11);
  return sol;
}

}  // namespace secopt
