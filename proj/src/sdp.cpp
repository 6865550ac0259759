#include "secopt/sdp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "secopt/errors.hpp"

namespace secopt::sdp {

std::string_view to_string(Status s) {
  switch (s) {
    case Status::kOptimal: return "optimal";
    case Status::kMaxIter: return "max_iter";
    case Status::kInfeasibleNumeric: return "infeasible_numeric";
  }
  return "unknown";
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Re Tr(X Y) without forming the product.
double re_trace_prod(const CMat& x, const CMat& y) {
  return (x.transpose().cwiseProduct(y)).sum().real();
}

CMat hermitian_part(const CMat& m) { return 0.5 * (m + m.adjoint()); }

// Largest alpha with x + alpha dx still positive definite (inf if unbounded).
double max_psd_step(const Eigen::LLT<CMat>& chol, const CMat& dx) {
  const CMat l_inv_dx = chol.matrixL().solve(dx);
  const CMat scaled = chol.matrixL().solve(l_inv_dx.adjoint()).adjoint();
  Eigen::SelfAdjointEigenSolver<CMat> es(hermitian_part(scaled), Eigen::EigenvaluesOnly);
  const double lmin = es.eigenvalues()(0);
  return lmin < 0.0 ? -1.0 / lmin : kInf;
}

double max_pos_step(const RVec& x, const RVec& dx) {
  double a = kInf;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (dx(i) < 0.0) a = std::min(a, -x(i) / dx(i));
  }
  return a;
}

double lambda_min(const CMat& m) {
  Eigen::SelfAdjointEigenSolver<CMat> es(hermitian_part(m), Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

void check_input(const std::vector<CMat>& a) {
  if (a.empty()) throw ContractError("sdp::solve: no constraints");
  const Eigen::Index n = a.front().rows();
  if (n == 0) throw ContractError("sdp::solve: empty constraint matrix");
  for (std::size_t j = 0; j < a.size(); ++j) {
    if (a[j].rows() != n || a[j].cols() != n) {
      throw ContractError("sdp::solve: constraint " + std::to_string(j) + " has wrong size");
    }
    if (!is_hermitian(a[j], 1e-10)) {
      throw ContractError("sdp::solve: constraint " + std::to_string(j) + " is not Hermitian");
    }
    const double lmin = lambda_min(a[j]);
    if (!(lmin > 0.0)) {
      throw ContractError("sdp::solve: constraint " + std::to_string(j) +
                          " is not positive definite (lambda_min=" + std::to_string(lmin) + ")");
    }
  }
}

}  // namespace

SdpResult solve(const std::vector<CMat>& a_in, const SdpOptions& opt) {
  check_input(a_in);
  const auto jn = static_cast<Eigen::Index>(a_in.size());
  const Eigen::Index n = a_in.front().rows();
  const CMat eye = CMat::Identity(n, n);

  // Congruence preconditioning: with P = (mean A_j)^(-1/2) the scaled
  // constraints P A_j P average to I and the objective becomes Tr(C Z'),
  // C = P^2, Z = P Z' P. Duals are unchanged.
  CMat a_mean = CMat::Zero(n, n);
  for (const auto& m : a_in) a_mean += hermitian_part(m);
  a_mean /= static_cast<double>(jn);
  Eigen::SelfAdjointEigenSolver<CMat> em(a_mean);
  const CMat pre = em.eigenvectors() * em.eigenvalues().cwiseInverse().cwiseSqrt().asDiagonal() *
                   em.eigenvectors().adjoint();
  const CMat c = hermitian_part(pre * pre);
  std::vector<CMat> a;
  a.reserve(a_in.size());
  for (const auto& m : a_in) a.push_back(hermitian_part(pre * hermitian_part(m) * pre));

  double max_trace = 0.0;
  CMat a_sum = CMat::Zero(n, n);
  for (const auto& m : a) {
    max_trace = std::max(max_trace, m.trace().real());
    a_sum += m;
  }
  Eigen::SelfAdjointEigenSolver<CMat> ec(c, Eigen::EigenvaluesOnly);
  CMat z = (0.5 / max_trace) * eye;
  RVec s(jn);
  for (Eigen::Index j = 0; j < jn; ++j) s(j) = 1.0 - re_trace_prod(a[j], z);
  RVec y = RVec::Constant(jn, 2.0 * ec.eigenvalues()(n - 1) / lambda_min(a_sum));
  CMat slack = y(0) * a_sum - c;

  SdpResult res;
  res.status = Status::kMaxIter;
  const double dim = static_cast<double>(n + jn);
  struct Iterate {
    CMat z, slack;
    RVec s, y;
    int it = 0;
    double merit = kInf;
  } best;
  int since_improved = 0;
  bool numeric_failure = false;

  int it = 0;
  for (;; ++it) {
    const double primal = re_trace_prod(c, z);
    const double dual = y.sum();
    const double gap = dual - primal;
    const double mu = (re_trace_prod(z, slack) + s.dot(y)) / dim;
    res.history.push_back({it, primal, dual, gap, mu});

    RVec rp(jn);
    for (Eigen::Index j = 0; j < jn; ++j) rp(j) = 1.0 - re_trace_prod(a[j], z) - s(j);
    CMat rd = -slack - c;
    for (Eigen::Index j = 0; j < jn; ++j) rd += y(j) * a[j];

    // Past the rounding floor the iterates drift, so the best one is kept.
    const double merit = std::abs(gap) / (1.0 + std::abs(primal)) + rp.cwiseAbs().maxCoeff() +
                         rd.cwiseAbs().maxCoeff();
    if (merit < best.merit) {
      since_improved = merit < 0.999 * best.merit ? 0 : since_improved + 1;
      best = {z, slack, s, y, it, merit};
    } else {
      ++since_improved;
    }
    if (merit <= opt.gap_target) {
      res.status = Status::kOptimal;
      break;
    }
    if (since_improved >= 5 || it >= opt.max_iter) break;

    Eigen::LLT<CMat> chol_s(slack);
    Eigen::LLT<CMat> chol_z(z);
    if (chol_s.info() != Eigen::Success || chol_z.info() != Eigen::Success) {
      numeric_failure = true;
      break;
    }
    const CMat s_inv = chol_s.solve(eye);

    // M_jk = Re Tr(A_j Z A_k S^-1) = Re <H_j, H_k> with H_j = L_Z^H A_j L_S^-H,
    // which keeps M a Gram matrix.
    std::vector<CMat> hmat(a.size());
    for (Eigen::Index k = 0; k < jn; ++k) {
      const CMat lz_a = chol_z.matrixU() * a[k];
      hmat[k] = chol_s.matrixL().solve(lz_a.adjoint()).adjoint();
    }
    Eigen::MatrixXd m(jn, jn);
    for (Eigen::Index j = 0; j < jn; ++j) {
      for (Eigen::Index k = j; k < jn; ++k) {
        m(j, k) = m(k, j) = (hmat[j].conjugate().cwiseProduct(hmat[k])).sum().real();
      }
      m(j, j) += s(j) / y(j);
    }
    Eigen::LDLT<Eigen::MatrixXd> ldlt(m);
    if (ldlt.info() != Eigen::Success) {
      numeric_failure = true;
      break;
    }

    // Newton direction for complementarity target `tgt`; `wz`, `ws` carry the
    // second-order terms of a previous direction (zero for the predictor).
    struct Direction {
      CMat dz, ds_mat;
      RVec dy, dslack;
    };
    auto direction = [&](double tgt, const CMat& wz, const RVec& ws) {
      const CMat centre = tgt * s_inv - z;
      const CMat q_sinv = (z * rd + wz) * s_inv;
      RVec rhs(jn);
      for (Eigen::Index j = 0; j < jn; ++j) {
        rhs(j) = -rp(j) + re_trace_prod(a[j], centre) - re_trace_prod(a[j], q_sinv) +
                 (tgt - s(j) * y(j) - ws(j)) / y(j);
      }
      Direction d;
      d.dy = ldlt.solve(rhs);
      d.ds_mat = rd;
      for (Eigen::Index k = 0; k < jn; ++k) d.ds_mat += d.dy(k) * a[k];
      const CMat cross = (z * d.ds_mat + wz) * s_inv;
      d.dz = hermitian_part(centre - 0.5 * (cross + cross.adjoint()));
      d.dslack.resize(jn);
      for (Eigen::Index j = 0; j < jn; ++j) {
        d.dslack(j) = (tgt - s(j) * y(j) - ws(j) - s(j) * d.dy(j)) / y(j);
      }
      return d;
    };
    // A common step length keeps the duality gap decreasing: along feasible
    // directions the second-order gap term vanishes.
    auto step_to_boundary = [&](const Direction& d) {
      return std::min({max_psd_step(chol_z, d.dz), max_pos_step(s, d.dslack),
                       max_psd_step(chol_s, hermitian_part(d.ds_mat)), max_pos_step(y, d.dy)});
    };

    const Direction pred = direction(0.0, CMat::Zero(n, n), RVec::Zero(jn));
    const double a_pred = std::min(1.0, step_to_boundary(pred));
    const double mu_pred =
        (re_trace_prod(z + a_pred * pred.dz, slack + a_pred * pred.ds_mat) +
         (s + a_pred * pred.dslack).dot(y + a_pred * pred.dy)) / dim;
    const double ratio = std::max(0.0, mu_pred / mu);
    const double sigma = std::min(opt.centering, ratio * ratio * ratio);
    const Direction d =
        direction(sigma * mu, pred.dz * pred.ds_mat, pred.dslack.cwiseProduct(pred.dy));
    double alpha = std::min(1.0, opt.step_fraction * step_to_boundary(d));
    if (!(alpha > 1e-12)) break;
    const CMat& dz = d.dz;
    const CMat& ds_mat = d.ds_mat;
    const RVec& dy = d.dy;
    const RVec& dslack = d.dslack;

    z = hermitian_part(z + alpha * dz);
    s += alpha * dslack;
    y += alpha * dy;
    slack = hermitian_part(slack + alpha * ds_mat);
  }

  res.iterations = it;
  z = best.z;
  y = best.y;
  res.z_opt = hermitian_part(pre * z * pre);
  res.objective = res.z_opt.trace().real();
  res.duals.assign(y.data(), y.data() + y.size());
  res.gap = y.sum() - res.objective;

  double worst_primal = 0.0;
  CMat dual_slack = -eye;
  for (Eigen::Index j = 0; j < jn; ++j) {
    const CMat aj = hermitian_part(a_in[static_cast<std::size_t>(j)]);
    worst_primal = std::max(worst_primal, re_trace_prod(aj, res.z_opt) - 1.0);
    dual_slack += y(j) * aj;
  }
  res.primal_residual = worst_primal;
  res.dual_residual = std::max(0.0, -lambda_min(dual_slack));
  res.complementarity = std::abs(re_trace_prod(res.z_opt, dual_slack));

  if (res.status != Status::kOptimal) {
    if (res.gap <= opt.gap_optimal * (1.0 + std::abs(res.objective))) {
      res.status = Status::kOptimal;
    } else if (numeric_failure) {
      res.status = Status::kInfeasibleNumeric;
    }
  }
  return res;
}

}  // namespace secopt::sdp
