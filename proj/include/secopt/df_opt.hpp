#pragma once

#include <array>

#include "secopt/model.hpp"

namespace secopt {

/// Geometry shared by the single-eavesdropper DF rate-max solution.
struct DfRateInternals {
  CVec u1;             ///< g / |g|
  CVec u2;             ///< h / |h|
  double zeta = 0.0;   ///< |u1^H u2|
  double theta = 0.0;  ///< arg(u2^H u1), in (-pi, pi]
  double j_pmin = 0.0; ///< J(p0_min)
  double j_p0 = 0.0;   ///< J(p0)
  bool collinear = false;
};

DfRateInternals df_rate_internals(const Scenario& sc);

/// Ratio of destination to eavesdropper SNR-plus-one terms when a fraction
/// z of the relay beam energy points at the eavesdropper and the rest is
/// steered to the destination as well as geometry allows.
double df_inner_ratio(const Scenario& sc, double ps, double z);

/// Raw closed-form stationary point of df_inner_ratio over z; undefined
/// for ps == p0 and for collinear or orthogonal channels.
double df_inner_z_closed_form(const Scenario& sc, double ps);

/// Both roots of the squared stationarity condition behind the closed form;
/// element 0 is the one df_inner_z_closed_form returns.
std::array<double, 2> df_inner_z_closed_form_roots(const Scenario& sc, double ps);

/// Optimal overlap z(ps) in [0, 1]. Uses the closed form, then a few
/// safeguarded Newton steps to remove rounding. ps == p0 is handled as the
/// continuous limit. Throws NumericalError if the closed form leaves [0,1].
double df_inner_z(const Scenario& sc, double ps);

/// J(ps) = df_inner_ratio(sc, ps, z(ps)).
double df_j1_objective(const Scenario& sc, double ps);

/// Secrecy-rate maximization with one eavesdropper under DF.
SchemeSolution df_max_secrecy_j1(const Scenario& sc);

/// Total-power minimization with one eavesdropper under DF, meeting the
/// secrecy target sc.rs0 with equality.
SchemeSolution df_min_power(const Scenario& sc);

/// Upper limit on total power before df_min_power reports infeasibility.
inline constexpr double kPowerSanityCap = 1e6;

}  // namespace secopt
