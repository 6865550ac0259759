#pragma once

#include <complex>

#include <Eigen/Dense>

namespace secopt {

using Cplx = std::complex<double>;
using CVec = Eigen::VectorXcd;
using CMat = Eigen::MatrixXcd;
using RVec = Eigen::VectorXd;

/// Largest dimension accepted by herm_eig.
inline constexpr Eigen::Index kMaxHermDim = 64;

/// True when m is square and equals its conjugate transpose within
/// rel_tol * max(1, max|m_ij|).
bool is_hermitian(const CMat& m, double rel_tol = 1e-12);

/// Rotates v by a global phase so its largest-magnitude entry is real and
/// nonnegative. Eigenvectors and beam directions are only defined up to
/// such a phase; this pins one representative.
void fix_phase(CVec& v);

/// Eigen-decomposition of a Hermitian matrix. Eigenvalues are sorted in
/// descending order; column k of `vectors` pairs with values[k].
struct HermEig {
  RVec values;
  CMat vectors;
};

/// Throws ContractError if m is not Hermitian or larger than kMaxHermDim,
/// NumericalError if the QR iteration does not converge.
HermEig herm_eig(const CMat& m);

/// Hermitian square root / inverse square root of a positive definite matrix.
CMat herm_sqrt(const CMat& m);
CMat herm_inv_sqrt(const CMat& m);

/// The two nonzero eigenpairs of r r^H - s s^H.
struct RankTwoEig {
  double eta1 = 0.0;  ///< positive eigenvalue
  double eta2 = 0.0;  ///< negative eigenvalue
  CVec e1;
  CVec e2;
};

/// Closed-form eigenpairs of the rank-two matrix r r^H - s s^H.
///
/// The nonzero eigenvectors lie in span{r, s}; writing them as
/// r + k s and imposing the eigen-equation gives a quadratic in the
/// eigenvalue with one root of each sign. Throws DegeneracyError when the
/// Gram determinant |r|^2|s|^2 - |r^H s|^2 is below 1e-14 |r|^2|s|^2: the
/// matrix then has rank <= 1 and the caller must treat that case itself.
RankTwoEig rank_two_eig(const CVec& r, const CVec& s);

struct QuadraticMax {
  CVec z;
  double value = 0.0;
};

/// Maximizes |d2^H z|^2 over unit z subject to |d1^H z|^2 = q.
///
/// d1, d2 must be unit vectors and 0 <= q <= 1. The maximizer lies in
/// span{d1, d2}; the optimum is 1 - (r sqrt(1-q) - sqrt((1-r^2) q))^2 with
/// r = |d1^H d2|. For collinear d1, d2 every feasible z attains q and a
/// vector from the orthogonal complement of d1 is used.
QuadraticMax constrained_quadratic_max(const CVec& d1, const CVec& d2, double q);

/// Value and z-derivatives of the overlap transfer function
/// T(z) = 1 - (kappa sqrt(1-z) - sqrt((1-kappa^2) z))^2.
struct OverlapTransfer {
  double value = 0.0;
  double d1 = 0.0;
  double d2 = 0.0;
};

/// T(kappa, z). Requires kappa, z in [0, 1].
double overlap_transfer(double kappa, double z);

/// T together with T' and T''. Derivatives are +-infinity at the endpoints
/// where the square-root terms are singular.
OverlapTransfer overlap_transfer_derivs(double kappa, double z);

}  // namespace secopt
