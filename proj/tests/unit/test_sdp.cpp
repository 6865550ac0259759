#include <cmath>
#include <functional>
#include <random>

#include "doctest.h"
#include "helpers.hpp"
#include "secopt/errors.hpp"
#include "secopt/sdp.hpp"

using namespace secopt;
using testing_util::random_hpd;

namespace {

double lambda_min_of(const CMat& m) {
  Eigen::SelfAdjointEigenSolver<CMat> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

// Golden-section maximization of a concave function on [lo, hi].
double golden_max(const std::function<double(double)>& f, double lo, double hi) {
  const double r = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - r * (b - a), d = a + r * (b - a);
  double fc = f(c), fd = f(d);
  for (int i = 0; i < 80; ++i) {
    if (fc < fd) {
      a = c; c = d; fc = fd; d = a + r * (b - a); fd = f(d);
    } else {
      b = d; d = c; fd = fc; c = b - r * (b - a); fc = f(c);
    }
  }
  return std::max({f(lo), f(hi), f(0.5 * (a + b))});
}

// The dual SDP is min sum y s.t. sum y_j A_j >= I; writing y = t p with p on
// the simplex gives optimum 1 / max_p lambda_min(sum p_j A_j), a concave
// maximization solved here by nested golden sections (J <= 3).
double simplex_oracle(const std::vector<CMat>& a) {
  if (a.size() == 1) return 1.0 / lambda_min_of(a[0]);
  if (a.size() == 2) {
    return 1.0 / golden_max([&](double p) { return lambda_min_of(p * a[0] + (1 - p) * a[1]); },
                            0.0, 1.0);
  }
  REQUIRE(a.size() == 3);
  auto inner = [&](double p1) {
    return golden_max(
        [&](double p2) { return lambda_min_of(p1 * a[0] + p2 * a[1] + (1 - p1 - p2) * a[2]); },
        0.0, 1.0 - p1);
  };
  return 1.0 / golden_max(inner, 0.0, 1.0);
}

void check_kkt(const std::vector<CMat>& a, const sdp::SdpResult& r) {
  CHECK(r.status == sdp::Status::kOptimal);
  CHECK(r.primal_residual <= 1e-8);
  CHECK(r.dual_residual <= 1e-8);
  CHECK(r.complementarity <= 1e-8 * (1 + r.objective));
  CHECK(r.gap <= 1e-8 * (1 + r.objective));
  Eigen::SelfAdjointEigenSolver<CMat> es(r.z_opt, Eigen::EigenvaluesOnly);
  CHECK(es.eigenvalues()(0) >= -1e-9);
  for (std::size_t j = 0; j < a.size(); ++j) {
    CHECK((a[j] * r.z_opt).trace().real() <= 1 + 1e-8);
    CHECK(r.duals[j] >= 0.0);
  }
}

}  // namespace

TEST_CASE("sdp: identity constraint") {
  const std::vector<CMat> a{CMat::Identity(3, 3)};
  const auto r = sdp::solve(a);
  check_kkt(a, r);
  CHECK(r.objective == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(r.duals[0] == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("sdp: diagonal constraint puts mass on the small eigenvalue") {
  CMat a1 = CMat::Zero(2, 2);
  a1(0, 0) = 2.0;
  a1(1, 1) = 1.0;
  const auto r = sdp::solve({a1});
  check_kkt({a1}, r);
  CHECK(r.objective == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(std::abs(r.z_opt(0, 0)) < 1e-9);
  CHECK(std::abs(r.z_opt(0, 1)) < 1e-9);
  CHECK(r.z_opt(1, 1).real() == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("sdp: matches the simplex oracle on random instances") {
  std::mt19937_64 rng(101);
  for (std::size_t jn : {1u, 2u, 3u}) {
    for (int t = 0; t < 15; ++t) {
      const Eigen::Index n = 2 + t % 6;
      std::vector<CMat> a;
      for (std::size_t j = 0; j < jn; ++j) a.push_back(random_hpd(rng, n));
      const auto r = sdp::solve(a);
      check_kkt(a, r);
      const double ref = simplex_oracle(a);
      CHECK(std::abs(r.objective - ref) <= 1e-7 * ref);
    }
  }
}

TEST_CASE("sdp: weak duality and gap decrease along the history") {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 20; ++t) {
    std::vector<CMat> a;
    const std::size_t jn = 1 + t % 6;
    for (std::size_t j = 0; j < jn; ++j) a.push_back(random_hpd(rng, 6));
    const auto r = sdp::solve(a);
    check_kkt(a, r);
    for (std::size_t i = 0; i < r.history.size(); ++i) {
      CHECK(r.history[i].primal <= r.history[i].dual + 1e-8);
      // Below ~1e-11 the gap is rounding noise in sum(y) - Tr(Z).
      if (i > 0) CHECK(r.history[i].gap <= 1.1 * r.history[i - 1].gap + 1e-11);
    }
  }
}

TEST_CASE("sdp: unitary conjugation carries over to the solution") {
  std::mt19937_64 rng(3);
  std::vector<CMat> a;
  for (int j = 0; j < 2; ++j) a.push_back(random_hpd(rng, 5));
  CMat b(5, 5);
  for (int i = 0; i < 5; ++i) b.col(i) = testing_util::cn_vec(rng, 5);
  const CMat u = Eigen::HouseholderQR<CMat>(b).householderQ();
  std::vector<CMat> rotated;
  for (const auto& m : a) rotated.push_back(u * m * u.adjoint());
  const auto r1 = sdp::solve(a);
  const auto r2 = sdp::solve(rotated);
  CHECK(std::abs(r1.objective - r2.objective) <= 1e-8 * r1.objective);
  CHECK((u * r1.z_opt * u.adjoint() - r2.z_opt).norm() <= 1e-6 * r1.z_opt.norm());
}

TEST_CASE("sdp: contract checks") {
  CMat indefinite = CMat::Identity(2, 2);
  indefinite(1, 1) = -1.0;
  CHECK_THROWS_AS(sdp::solve({indefinite}), ContractError);
  CHECK_THROWS_AS(sdp::solve({}), ContractError);
  CHECK_THROWS_AS(sdp::solve({CMat::Identity(2, 2), CMat::Identity(3, 3)}), ContractError);
}
