#pragma once

#include <string_view>
#include <vector>

#include "secopt/linalg.hpp"

namespace secopt::sdp {

enum class Status { kOptimal, kMaxIter, kInfeasibleNumeric };

std::string_view to_string(Status s);

struct IterationRecord {
  int iteration = 0;
  double primal = 0.0;  ///< Tr(Z)
  double dual = 0.0;    ///< sum of duals
  double gap = 0.0;
  double mu = 0.0;
};

struct SdpResult {
  CMat z_opt;
  double objective = 0.0;
  std::vector<double> duals;
  double gap = 0.0;
  int iterations = 0;
  Status status = Status::kMaxIter;
  double primal_residual = 0.0;  ///< max_j max(0, Tr(A_j Z) - 1)
  double dual_residual = 0.0;    ///< max(0, -lambda_min(sum y_j A_j - I))
  double complementarity = 0.0;  ///< |Tr(Z (sum y_j A_j - I))|
  std::vector<IterationRecord> history;
};

struct SdpOptions {
  int max_iter = 200;
  double step_fraction = 0.98;
  double centering = 0.2;
  /// Target relative gap. Tighter than the "optimal" threshold so that the
  /// returned Z has clean rank.
  double gap_target = 1e-12;
  /// Relative gap at or below which a stalled run still reports optimal.
  double gap_optimal = 1e-8;
};

/// maximize Tr(Z) subject to Tr(A_j Z) <= 1, Z >= 0, for Hermitian positive
/// definite A_j of equal size. Infeasible-start-free HKM primal-dual
/// interior-point method with slacks s_j on the linear constraints.
SdpResult solve(const std::vector<CMat>& a, const SdpOptions& opt = {});

}  // namespace secopt::sdp
