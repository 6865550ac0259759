#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "secopt/model.hpp"
#include "secopt/sdp.hpp"

namespace secopt {

/// value(ps) = intercept + slope * ps.
struct AffineLine {
  double intercept = 0.0;
  double slope = 0.0;
  double at(double ps) const { return intercept + slope * ps; }
};

/// Upper envelope of a set of affine functions on [lo, hi]. Segment k spans
/// [breakpoints[k], breakpoints[k+1]] and is attained by line active_index[k].
struct PolygonalEnvelope {
  std::vector<double> breakpoints;
  std::vector<std::size_t> active_index;
};

PolygonalEnvelope upper_envelope(const std::vector<AffineLine>& lines, double lo, double hi);

/// Eavesdropper received power as a function of ps for a fixed unit relay
/// direction x: ps |g0_j|^2 + (p0 - ps) |g_j^H x|^2.
std::vector<AffineLine> eavesdropper_lines(const Scenario& sc, const CVec& x);

/// min_j of the destination-to-eavesdropper SNR-plus-one ratio for source
/// power ps and unit relay direction x.
double df_multi_ratio(const Scenario& sc, double ps, const CVec& x);

/// Best ps in [p0_min, p0] for fixed x; the ratio is linear-fractional on
/// each envelope segment, so only vertices and endpoints are scored.
double ps_polygonal_search(const Scenario& sc, const CVec& x);

/// max ||v||^2 s.t. v^H A_j v <= 1, the beam subproblem after whitening by
/// the destination covariance.
struct QcqpInstance {
  std::vector<CMat> a;
  CMat rh_inv_sqrt;
};

QcqpInstance build_qcqp(const Scenario& sc, double ps);

struct QcqpSolution {
  CVec v;                  ///< feasible, max_j v^H A_j v = 1
  double value = 0.0;      ///< ||v||^2
  double sdr_value = 0.0;  ///< relaxation upper bound (dual objective)
  bool tight = false;      ///< value attains the bound
  std::string method;      ///< eigen, rank_one, rank_reduction or randomization
  double rank_ratio = 0.0; ///< lambda_2 / lambda_1 of the relaxation optimum
  int sdp_iterations = 0;
};

inline constexpr int kGrpSamples = 1000;
inline constexpr double kRankOneRatio = 1e-8;

/// Solves the relaxation and recovers a rank-one point: directly when the
/// optimum has rank one, by rank reduction when there are two constraints,
/// otherwise by Gaussian randomization with `samples` draws from `seed`.
/// Throws NumericalError (duals in the message) when the relaxation fails.
QcqpSolution solve_qcqp(const QcqpInstance& q, std::uint64_t seed, int samples = kGrpSamples);

/// Unit relay direction x = W v / ||W v|| with W the whitening matrix.
CVec qcqp_direction(const QcqpInstance& q, const CVec& v);

/// Rank reduction: given Z = V V^H, returns V' with fewer columns and the
/// same traces Tr(Z) and Tr(A_j Z), as long as rank^2 > J + 1.
CMat reduce_rank(const std::vector<CMat>& a, CMat v);

/// Nulling baseline: relays beam inside the null space of all
/// eavesdropper channels. Requires N > J.
SchemeSolution df_multi_suboptimal(const Scenario& sc);

/// Deterministic 64-bit fingerprint of the scenario data.
std::uint64_t scenario_seed(const Scenario& sc);

inline constexpr int kDfMultiMaxIter = 100;
inline constexpr int kGrpRetries = 5;

/// Alternating maximization over ps and the relay direction for J >= 2.
/// J == 1 is delegated to df_max_secrecy_j1. The default randomization seed
/// is scenario_seed(sc).
SchemeSolution df_multi_max(const Scenario& sc, std::optional<std::uint64_t> seed = std::nullopt);

}  // namespace secopt
