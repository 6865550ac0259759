#include "secopt/model.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "secopt/errors.hpp"

namespace secopt {

void Scenario::validate() const {
  const Eigen::Index n = h.size();
  if (n < 1) throw ContractError("scenario: need at least one relay");
  if (g.empty()) throw ContractError("scenario: need at least one eavesdropper");
  if (g0.size() != g.size()) throw ContractError("scenario: g0 and g differ in length");
  for (std::size_t j = 0; j < g.size(); ++j) {
    if (g[j].size() != n) {
      throw ContractError("scenario: g[" + std::to_string(j) + "] has wrong length");
    }
    if (!g[j].allFinite() || !std::isfinite(std::abs(g0[j]))) {
      throw ContractError("scenario: non-finite eavesdropper gain");
    }
  }
  if (!h.allFinite() || !std::isfinite(std::abs(h0))) {
    throw ContractError("scenario: non-finite destination gain");
  }
  if (!(sigma2 > 0.0)) throw ContractError("scenario: sigma2 must be positive");
  if (!(p0 > 0.0)) throw ContractError("scenario: p0 must be positive");
  if (!(p0_min >= 0.0 && p0_min <= p0)) {
    throw ContractError("scenario: p0_min must lie in [0, p0]");
  }
  if (!(rs0 >= 0.0)) throw ContractError("scenario: rs0 must be nonnegative");
}

std::string_view to_string(Branch b) {
  switch (b) {
    case Branch::kDirect: return "direct";
    case Branch::kRelaysActive: return "relays_active";
    case Branch::kCollinearFallback: return "collinear_fallback";
    case Branch::kSourceOnly: return "source_only";
    case Branch::kNegativeEigen: return "negative_eigen";
    case Branch::kPositiveEigen: return "positive_eigen";
    case Branch::kBalanced: return "balanced";
    case Branch::kAlternating: return "alternating";
    case Branch::kNoPositiveRate: return "no_positive_rate";
    case Branch::kSuboptZero: return "subopt_zero";
    case Branch::kSuboptFull: return "subopt_full";
    case Branch::kSuboptInterior: return "subopt_interior";
    case Branch::kSuboptJamming: return "subopt_jamming";
    case Branch::kNulling: return "nulling";
  }
  return "unknown";
}

namespace {

void check_weights(const Scenario& sc, double ps, const CVec& w) {
  if (!(ps >= 0.0)) throw ContractError("rates: ps must be nonnegative");
  if (w.size() != sc.h.size()) throw ContractError("rates: w has wrong length");
}

}  // namespace

LinkRates df_rates(const Scenario& sc, double ps, const CVec& w) {
  check_weights(sc, ps, w);
  LinkRates out;
  const double sd = ps * std::norm(sc.h0) + std::norm(sc.h.dot(w));
  out.rd = 0.5 * std::log2(1.0 + sd / sc.sigma2);
  out.re.reserve(sc.g.size());
  for (std::size_t j = 0; j < sc.g.size(); ++j) {
    const double se = ps * std::norm(sc.g0[j]) + std::norm(sc.g[j].dot(w));
    out.re.push_back(0.5 * std::log2(1.0 + se / sc.sigma2));
  }
  return out;
}

LinkRates cj_rates(const Scenario& sc, double ps, const CVec& w) {
  check_weights(sc, ps, w);
  LinkRates out;
  out.rd = std::log2(1.0 + ps * std::norm(sc.h0) / (std::norm(sc.h.dot(w)) + sc.sigma2));
  out.re.reserve(sc.g.size());
  for (std::size_t j = 0; j < sc.g.size(); ++j) {
    const double jam = std::norm(sc.g[j].dot(w)) + sc.sigma2;
    out.re.push_back(std::log2(1.0 + ps * std::norm(sc.g0[j]) / jam));
  }
  return out;
}

double secrecy_rate(double rd, std::span<const double> re) {
  double worst = re.empty() ? 0.0 : *std::max_element(re.begin(), re.end());
  return std::max(0.0, rd - worst);
}

double secrecy_rate(const LinkRates& rates) { return secrecy_rate(rates.rd, rates.re); }

double direct_transmission_rate(const Scenario& sc) {
  const double rd = std::log2(1.0 + sc.p0 * std::norm(sc.h0) / sc.sigma2);
  double re = 0.0;
  for (const Cplx& g0 : sc.g0) {
    re = std::max(re, std::log2(1.0 + sc.p0 * std::norm(g0) / sc.sigma2));
  }
  return std::max(0.0, rd - re);
}

double direct_min_power(const Scenario& sc) {
  // (1 + ps X) = 2^Rs (1 + ps Y)  =>  ps = (2^Rs - 1) / (X - 2^Rs Y)
  const double k = std::exp2(sc.rs0);
  const double x = std::norm(sc.h0) / sc.sigma2;
  double y = 0.0;
  for (const Cplx& g0 : sc.g0) y = std::max(y, std::norm(g0) / sc.sigma2);
  const double denom = x - k * y;
  if (!(denom > 0.0)) {
    throw InfeasibleError("direct transmission cannot reach the secrecy target at any power");
  }
  return (k - 1.0) / denom;
}

double default_p0_min(const CVec& a, double sigma2, double p0) {
  if (a.size() == 0) return 0.0;
  const double weakest = a.cwiseAbs2().minCoeff();
  if (!(weakest > 0.0)) return 0.5 * p0;
  // 1/2 log2(1 + ps |a|^2 / sigma2) >= 2
  const double ps = 15.0 * sigma2 / weakest;
  return std::min(ps, 0.5 * p0);
}

double dbm_to_watt(double dbm) { return 1e-3 * std::pow(10.0, dbm / 10.0); }

double watt_to_dbm(double watt) { return 10.0 * std::log10(watt / 1e-3); }

}  // namespace secopt
