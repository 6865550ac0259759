#pragma once

#include <optional>
#include <vector>

#include "secopt/model.hpp"

namespace secopt {

/// Normalized channel constants of the single-eavesdropper CJ problems.
///
/// Rate maximization: a1 = |h|^2/|h0|^2, a2 = sigma2/|h0|^2,
/// a3 = |g|^2/|g0|^2, a4 = sigma2/|g0|^2. Power minimization scales a1, a2
/// by (2^Rs - 1) and a3, a4 by (2^Rs - 1)/2^Rs. `eta` is |v1^H v2| with
/// v1 = h/|h|, v2 = g/|g|.
struct CjAlphas {
  double a1 = 0.0;
  double a2 = 0.0;
  double a3 = 0.0;
  double a4 = 0.0;
  double eta = 0.0;
};

CjAlphas cj_rate_alphas(const Scenario& sc);
CjAlphas cj_power_alphas(const Scenario& sc);

/// Open interval of z where a concave overlap curve lies above a line.
struct ZInterval {
  double lo = 0.0;
  double hi = 0.0;
  bool empty() const { return !(hi > lo); }
};

/// Roots in [0, 1] of T(kappa, z) = beta1 z + beta2 from the closed form
/// z = 1/(1+u^2), u the nonnegative roots of the associated quadratic.
std::vector<double> overlap_line_roots(double kappa, double beta1, double beta2);

/// {z in [0,1] : T(kappa, z) > beta1 z + beta2}; an interval since T is
/// concave.
ZInterval overlap_above_line(double kappa, double beta1, double beta2);

/// argmax over [0,1] of T(kappa, z) - slope z, i.e. the root of T'(z) = slope.
double overlap_line_peak(double kappa, double slope);

struct Positivity {
  bool positive = false;
  std::optional<double> z0;
  std::optional<double> threshold_power;
};

/// Whether CJ can reach a positive secrecy rate with budget sc.p0. When the
/// direct link is weaker than the eavesdropper link, the budget must exceed
/// a threshold set by the best jamming overlap z0.
Positivity cj_positivity(const Scenario& sc);

/// Secrecy rate (bits/s/Hz, not clamped) as a function of source power and
/// the overlap z of the jamming beam with the destination channel.
double cj_rate_objective(const CjAlphas& al, double p0, double ps, double z);

/// Best source power for fixed z: the objective is compared at 0, p0 and
/// the real roots in [0, p0] of the stationarity quadratic.
double cj_ps_given_z(const CjAlphas& al, double p0, double z);

/// Interval of z with a positive secrecy rate at source power ps.
ZInterval cj_rate_interval(const CjAlphas& al, double p0, double ps);

struct ZDerivs {
  double d1 = 0.0;
  double d2 = 0.0;
};

/// First and second z-derivatives of the secrecy rate (natural-log units).
ZDerivs cj_rate_dz(const CjAlphas& al, double p0, double ps, double z);

/// Stationary point of the rate in z for fixed ps (0 < ps < p0), found by
/// safeguarded Newton on the positive-rate interval. Throws InfeasibleError
/// when no z gives a positive rate.
double cj_z_given_ps(const CjAlphas& al, double p0, double ps);

/// Rate maximization via alternating (ps, z) updates from several seeds.
SchemeSolution cj_max_secrecy(const Scenario& sc);

/// Rate maximization restricted to jamming nulled at the destination (z = 0).
SchemeSolution cj_suboptimal_maxrate(const Scenario& sc);

/// Total power ps + gamma meeting the secrecy target with jamming power
/// gamma and overlap z; +infinity where the target is unreachable.
double cj_power_objective(const CjAlphas& al, double gamma, double z);

/// Source power implied by the secrecy equality at (gamma, z).
double cj_source_power(const CjAlphas& al, double gamma, double z);

/// Optimal jamming power for fixed z. Throws InfeasibleError when
/// a3 F(z) - a1 z <= 0.
double cj_gamma_given_z(const CjAlphas& al, double z);

/// Interval of z where the secrecy target is reachable at jamming power gamma.
ZInterval cj_power_interval(const CjAlphas& al, double gamma);

/// f_gamma(z) = 1/(gamma a1 z + a2) - 1/(gamma a3 F(z) + a4) = 1/ps, and its
/// z-derivatives.
double cj_fgamma(const CjAlphas& al, double gamma, double z);
ZDerivs cj_fgamma_dz(const CjAlphas& al, double gamma, double z);

/// Overlap z maximizing f_gamma (minimizing the source power) for gamma > 0.
double cj_z_given_gamma(const CjAlphas& al, double gamma);

/// Power minimization under the secrecy constraint sc.rs0 via alternating
/// (gamma, z) updates. Throws InfeasibleError when no (gamma, z) works.
SchemeSolution cj_min_power(const Scenario& sc);

/// Power minimization restricted to z = 0.
SchemeSolution cj_suboptimal_minpower(const Scenario& sc);

/// Number of seeds used by the alternating CJ solvers.
inline constexpr int kCjStarts = 5;

}  // namespace secopt
