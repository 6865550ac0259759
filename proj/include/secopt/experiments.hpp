#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "secopt/json_io.hpp"
#include "secopt/model.hpp"

namespace secopt::experiments {

/// Collinear layout: source at 0, relay cluster at d_sr, destination at d_sd,
/// eavesdropper j at d_se[j]. A single d_se entry applies to every
/// eavesdropper.
struct Geometry {
  double d_sr = 5.0;
  double d_sd = 50.0;
  std::vector<double> d_se{50.0};
  int n_relays = 10;
  int n_eaves = 1;

  double eave_distance(int j) const;
  void validate() const;
};

/// Line-of-sight gain rho0 * d^(-c/2) * exp(i theta).
struct LosParams {
  double rho0 = 1.0;
  double c = 3.5;
  std::uint64_t seed = 1;
};

struct PowerParams {
  double p0_dbm = 30.0;
  double sigma2_dbm = kDefaultSigma2Dbm;
  double rs0 = 1.0;
  std::optional<double> p0_min_w;  ///< default_p0_min when unset
};

/// Edge kinds used to key the phase generator.
enum class Edge : std::uint64_t { kSourceDest, kRelayDest, kSourceEave, kRelayEave, kSourceRelay };

/// Phase in [0, 2 pi) for one link, a pure function of (seed, trial, edge).
double edge_phase(std::uint64_t seed, std::uint64_t trial, Edge kind, int eave, int relay);

Scenario gen_channels(const Geometry& geom, const LosParams& los, const PowerParams& pw,
                      std::uint64_t trial);

enum class Axis { kDsd, kDse, kNEaves };
enum class Metric { kMaxRate, kMinPower };
enum class Scheme { kDf, kDfMulti, kDfSub, kCj, kCjSub, kDirect };

std::string_view to_string(Axis a);
std::string_view to_string(Metric m);
std::string_view to_string(Scheme s);
std::optional<Scheme> parse_scheme(std::string_view s);
std::optional<Metric> parse_metric(std::string_view s);

struct SweepSpec {
  std::string name;
  Axis axis = Axis::kDsd;
  std::vector<double> axis_values;
  Metric metric = Metric::kMaxRate;
  std::vector<Scheme> schemes;
  Geometry geometry;
  LosParams los;
  PowerParams power;
  int trials = 500;

  /// Geometry at one axis point.
  Geometry geometry_at(double axis_value) const;
  void validate() const;
};

/// Throws SchemaError naming the offending field.
SweepSpec sweep_from_json(const Json& j);
Json sweep_to_json(const SweepSpec& spec);

/// Hex FNV-1a of the canonical (key-sorted) JSON form.
std::string config_hash(const SweepSpec& spec);

struct TrialOutcome {
  enum class Kind { kOk, kInfeasible, kFailed };
  Kind kind = Kind::kOk;
  double value = 0.0;  ///< bits/s/Hz or dBm
  std::string what;
};

/// Dispatches to the solver for (scheme, metric). "df" picks the closed form
/// for one eavesdropper and the alternating solver otherwise. Throws
/// ContractError for combinations without a solver and InfeasibleError when
/// a power target cannot be met.
SchemeSolution solve_scheme(Scheme s, Metric m, const Scenario& sc);

/// Runs one scheme on one scenario. Never throws for solver errors.
TrialOutcome evaluate_scheme(Scheme s, Metric m, const Scenario& sc);

struct PointStats {
  double mean = 0.0;       ///< NaN when no trial was feasible
  double std_error = 0.0;
  int trials = 0;
  int feasible = 0;
  int failed = 0;
  double feasible_fraction() const { return trials ? double(feasible) / trials : 0.0; }
};

struct SchemeSeries {
  Scheme scheme = Scheme::kDf;
  std::vector<PointStats> points;
};

struct TrialFailure {
  double axis_value = 0.0;
  Scheme scheme = Scheme::kDf;
  int trial = 0;
  std::string what;
};

struct SweepResult {
  SweepSpec spec;
  std::vector<SchemeSeries> series;
  std::vector<TrialFailure> failures;
};

/// Worker count: SECRECY_OPT_THREADS if set, else hardware concurrency.
int default_threads();

/// Evaluates every (axis point, trial, scheme). Results do not depend on
/// the thread count.
SweepResult run_sweep(const SweepSpec& spec, int threads = 0);

std::string to_csv(const SweepResult& r);
std::string to_svg(const SweepResult& r);

/// Writes via a temporary file in the same directory and renames it.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

Json run_manifest(const SweepSpec& spec, const std::vector<std::string>& outputs,
                  const std::string& timestamp);

/// Current UTC time as ISO 8601.
std::string utc_timestamp();

}  // namespace secopt::experiments
