#pragma once

#include <cmath>
#include <random>

#include "secopt/model.hpp"

namespace testing_util {

using secopt::Cplx;
using secopt::CVec;

inline Cplx cn(std::mt19937_64& rng) {
  std::normal_distribution<double> nd(0.0, std::sqrt(0.5));
  return {nd(rng), nd(rng)};
}

inline CVec cn_vec(std::mt19937_64& rng, Eigen::Index n) {
  CVec v(n);
  for (Eigen::Index i = 0; i < n; ++i) v[i] = cn(rng);
  return v;
}

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

/// Rayleigh-faded instance with O(1) gains.
inline secopt::Scenario random_scenario(std::mt19937_64& rng, Eigen::Index n, std::size_t j) {
  secopt::Scenario sc;
  sc.h0 = cn(rng);
  sc.h = cn_vec(rng, n);
  for (std::size_t k = 0; k < j; ++k) {
    sc.g0.push_back(cn(rng));
    sc.g.push_back(cn_vec(rng, n));
  }
  sc.sigma2 = uniform(rng, 0.05, 1.0);
  sc.p0 = uniform(rng, 0.5, 10.0);
  sc.p0_min = uniform(rng, 0.05, 0.5) * sc.p0;
  sc.rs0 = uniform(rng, 0.2, 2.0);
  return sc;
}

/// max |d2^H x|^2 over unit x with |d1^H x|^2 = q, by Cauchy-Schwarz on the
/// split x = sqrt(q) d1 + sqrt(1-q) y, y orthogonal to d1.
inline double overlap_bound(double r, double q) {
  const double s = std::sqrt(std::max(0.0, 1.0 - r * r));
  const double v = std::sqrt(q) * r + std::sqrt(1.0 - q) * s;
  return v * v;
}

}  // namespace testing_util

namespace testing_util {

/// B B^H + floor I with Gaussian B: Hermitian positive definite.
inline secopt::CMat random_hpd(std::mt19937_64& rng, Eigen::Index n, double floor = 0.1) {
  secopt::CMat b(n, n);
  for (Eigen::Index i = 0; i < n; ++i) b.col(i) = cn_vec(rng, n);
  return b * b.adjoint() + floor * secopt::CMat::Identity(n, n);
}

}  // namespace testing_util
