#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "secopt/linalg.hpp"

namespace secopt {

/// One problem instance: all channel gains plus power and rate constraints.
/// Powers are in watts, rates in bits/s/Hz.
struct Scenario {
  Cplx h0{0.0, 0.0};       ///< source -> destination
  CVec h;                  ///< relays -> destination, length N
  std::vector<Cplx> g0;    ///< source -> eavesdropper j, length J
  std::vector<CVec> g;     ///< relays -> eavesdropper j, J vectors of length N
  CVec a;                  ///< source -> relays (only used to derive p0_min)
  double sigma2 = 0.0;     ///< noise variance
  double p0 = 0.0;         ///< total power budget
  double p0_min = 0.0;     ///< minimum DF source power
  double rs0 = 0.0;        ///< secrecy-rate target for power minimization

  Eigen::Index n_relays() const { return h.size(); }
  std::size_t n_eaves() const { return g.size(); }

  /// Throws ContractError when the instance is malformed.
  void validate() const;
};

/// Which closed-form case or algorithm path produced a solution.
enum class Branch {
  kDirect,              ///< source alone at full power, relays idle
  kRelaysActive,        ///< DF rate-max: source at p0_min, relays beamform
  kCollinearFallback,   ///< DF rate-max with collinear h, g
  kSourceOnly,          ///< power-min: source alone meets the target
  kNegativeEigen,       ///< DF power-min: relays along the negative eigenvector
  kPositiveEigen,       ///< DF power-min: relays along the positive eigenvector
  kBalanced,            ///< DF power-min: 4^Rs |g0|^2 == |h0|^2 case
  kAlternating,         ///< converged alternating optimization
  kNoPositiveRate,      ///< no positive secrecy rate is achievable
  kSuboptZero,          ///< suboptimal CJ rate-max, source silent
  kSuboptFull,          ///< suboptimal CJ rate-max, source at p0
  kSuboptInterior,      ///< suboptimal CJ rate-max, interior stationary point
  kSuboptJamming,       ///< suboptimal CJ power-min with active jamming
  kNulling,             ///< DF multi-eavesdropper nulling solution
};

std::string_view to_string(Branch b);

/// One step of an alternating optimization: the variable updated first
/// (source power or jamming power), the overlap z and the objective.
struct TraceEntry {
  double first = 0.0;
  double z = 0.0;
  double objective = 0.0;
  double bound = 0.0;  ///< relaxation upper bound where one exists, else NaN
};

struct AltIterTrace {
  double seed = 0.0;  ///< starting z (CJ) or source power (DF multi)
  std::vector<TraceEntry> steps;
  bool converged = false;
  int iterations = 0;
};

struct SchemeSolution {
  double ps = 0.0;
  CVec w;
  double secrecy_rate = 0.0;
  double total_power = 0.0;
  int iterations = 0;
  bool converged = true;
  Branch branch = Branch::kDirect;
  std::map<std::string, double> diagnostics;
  std::vector<std::string> notes;
  std::vector<AltIterTrace> traces;
};

struct LinkRates {
  double rd = 0.0;
  std::vector<double> re;
};

/// Decode-and-forward rates (two slots, hence the 1/2 factor).
LinkRates df_rates(const Scenario& sc, double ps, const CVec& w);

/// Cooperative-jamming rates; relay signals act as noise.
LinkRates cj_rates(const Scenario& sc, double ps, const CVec& w);

/// max{0, rd - max_j re_j}.
double secrecy_rate(double rd, std::span<const double> re);
double secrecy_rate(const LinkRates& rates);

/// Secrecy rate of the source alone at full power p0 in a single slot.
double direct_transmission_rate(const Scenario& sc);

/// Source power needed by direct transmission to reach rs0 against the
/// strongest eavesdropper. Throws InfeasibleError when no power suffices.
double direct_min_power(const Scenario& sc);

/// Smallest source power that lets the weakest relay decode at 2 bits/s/Hz
/// over the two-slot link, capped at p0/2.
double default_p0_min(const CVec& a, double sigma2, double p0);

/// Assumed noise power for generated scenarios: -25 dBm.
inline constexpr double kDefaultSigma2Dbm = -25.0;

double dbm_to_watt(double dbm);
double watt_to_dbm(double watt);

/// Rank-one outer product v v^H.
inline CMat outer(const CVec& v) { return v * v.adjoint(); }

}  // namespace secopt
