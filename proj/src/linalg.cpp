#include "secopt/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "secopt/errors.hpp"

namespace secopt {

namespace {

constexpr double kCollinearGram = 1e-14;

void require_unit(const CVec& d, const char* name) {
  if (std::abs(d.norm() - 1.0) > 1e-12) {
    throw ContractError(std::string(name) + " must have unit norm");
  }
}

}  // namespace

bool is_hermitian(const CMat& m, double rel_tol) {
  if (m.rows() != m.cols()) return false;
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  return (m - m.adjoint()).cwiseAbs().maxCoeff() <= rel_tol * scale;
}

void fix_phase(CVec& v) {
  if (v.size() == 0) return;
  Eigen::Index k = 0;
  v.cwiseAbs().maxCoeff(&k);
  const double mag = std::abs(v[k]);
  if (mag == 0.0) return;
  v *= std::conj(v[k]) / mag;
  v[k] = Cplx(v[k].real(), 0.0);
}

HermEig herm_eig(const CMat& m) {
  if (m.rows() != m.cols()) throw ContractError("herm_eig: matrix is not square");
  if (m.rows() == 0) throw ContractError("herm_eig: empty matrix");
  if (m.rows() > kMaxHermDim) {
    throw ContractError("herm_eig: dimension " + std::to_string(m.rows()) + " exceeds " +
                        std::to_string(kMaxHermDim));
  }
  if (!m.allFinite()) throw ContractError("herm_eig: non-finite entries");
  if (!is_hermitian(m)) throw ContractError("herm_eig: matrix is not Hermitian");

  Eigen::SelfAdjointEigenSolver<CMat> solver(m);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("herm_eig: QR iteration did not converge (n=" +
                         std::to_string(m.rows()) +
                         ", |M|_F=" + std::to_string(m.norm()) + ")");
  }
  const Eigen::Index n = m.rows();
  HermEig out;
  out.values.resize(n);
  out.vectors.resize(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    out.values[k] = solver.eigenvalues()[n - 1 - k];
    CVec col = solver.eigenvectors().col(n - 1 - k);
    fix_phase(col);
    out.vectors.col(k) = col;
  }
  return out;
}

CMat herm_sqrt(const CMat& m) {
  const HermEig e = herm_eig(m);
  if (e.values.minCoeff() < 0.0) throw ContractError("herm_sqrt: matrix is not PSD");
  return e.vectors * e.values.cwiseSqrt().asDiagonal() * e.vectors.adjoint();
}

CMat herm_inv_sqrt(const CMat& m) {
  const HermEig e = herm_eig(m);
  if (e.values.minCoeff() <= 0.0) throw ContractError("herm_inv_sqrt: matrix is not PD");
  const RVec scale = e.values.cwiseSqrt().cwiseInverse();
  CMat out = e.vectors * scale.asDiagonal() * e.vectors.adjoint();
  return 0.5 * (out + out.adjoint());
}

RankTwoEig rank_two_eig(const CVec& r, const CVec& s) {
  if (r.size() != s.size()) throw ContractError("rank_two_eig: size mismatch");
  const double nr = r.squaredNorm();
  const double ns = s.squaredNorm();
  const Cplx p = r.dot(s);  // r^H s
  const double ap = std::abs(p);
  const double gram = nr * ns - ap * ap;
  if (nr == 0.0 || ns == 0.0 || gram <= kCollinearGram * nr * ns) {
    throw DegeneracyError("rank_two_eig: r and s are (nearly) collinear");
  }

  // sqrt((|r|^2+|s|^2)^2 - 4|r^H s|^2), written to avoid cancellation.
  const double disc = std::sqrt((nr - ns) * (nr - ns) + 4.0 * gram);
  RankTwoEig out;
  if (nr >= ns) {
    out.eta1 = 0.5 * (nr - ns + disc);
    out.eta2 = -gram / out.eta1;
  } else {
    out.eta2 = 0.5 * (nr - ns - disc);
    out.eta1 = -gram / out.eta2;
  }

  // |c2| = 2|r^H s| / (|r|^2+|s|^2+disc) and |c4| = 1/|c2|; the phase factor
  // e^{i(pi - theta)} equals -conj(p)/|p|.
  const double c2 = 2.0 * ap / (nr + ns + disc);
  const Cplx rot = ap > 0.0 ? std::conj(p) / ap : Cplx(1.0, 0.0);
  out.e1 = r - c2 * rot * s;
  out.e2 = c2 * r - rot * s;
  out.e1.normalize();
  out.e2.normalize();
  fix_phase(out.e1);
  fix_phase(out.e2);
  return out;
}

QuadraticMax constrained_quadratic_max(const CVec& d1, const CVec& d2, double q) {
  if (d1.size() != d2.size() || d1.size() == 0) {
    throw ContractError("constrained_quadratic_max: size mismatch");
  }
  require_unit(d1, "d1");
  require_unit(d2, "d2");
  if (!(q >= -1e-12 && q <= 1.0 + 1e-12)) {
    throw ContractError("constrained_quadratic_max: q must lie in [0, 1]");
  }
  q = std::clamp(q, 0.0, 1.0);

  const Cplx d21 = d2.dot(d1);  // d2^H d1, argument phi
  const double r = std::min(1.0, std::abs(d21));
  const double sq = std::sqrt(q);

  QuadraticMax out;
  const double gap = r * std::sqrt(1.0 - q) - std::sqrt((1.0 - r * r) * q);
  out.value = 1.0 - gap * gap;

  if (r < 1.0 - 1e-12) {
    const double c2 = std::sqrt((1.0 - q) / (1.0 - r * r));
    const Cplx phase = r > 0.0 ? -std::conj(d21) / std::abs(d21) : Cplx(-1.0, 0.0);
    const Cplx c1 = (r * c2 - sq) * phase;
    out.z = c1 * d1 + c2 * d2;
  } else {
    // d2 = e^{i psi} d1: the objective equals the constraint value q.
    out.z = sq * d1;
    if (q < 1.0) {
      const Eigen::Index n = d1.size();
      if (n < 2) {
        throw ContractError(
            "constrained_quadratic_max: q < 1 needs a direction orthogonal to d1");
      }
      Eigen::Index k = 0;
      d1.cwiseAbs().minCoeff(&k);
      CVec t = CVec::Unit(n, k);
      t -= d1 * d1.dot(t);
      t.normalize();
      out.z += std::sqrt(1.0 - q) * t;
    }
  }
  out.z.normalize();
  fix_phase(out.z);
  return out;
}

double overlap_transfer(double kappa, double z) {
  if (!(kappa >= 0.0 && kappa <= 1.0) || !(z >= 0.0 && z <= 1.0)) {
    throw ContractError("overlap_transfer: kappa and z must lie in [0, 1]");
  }
  const double u = kappa * std::sqrt(1.0 - z) - std::sqrt((1.0 - kappa * kappa) * z);
  return 1.0 - u * u;
}

OverlapTransfer overlap_transfer_derivs(double kappa, double z) {
  OverlapTransfer out;
  out.value = overlap_transfer(kappa, z);
  // T(z) = (1-k^2) + (2k^2-1) z + 2 k s sqrt(z(1-z)),  s = sqrt(1-k^2)
  const double ks = kappa * std::sqrt(1.0 - kappa * kappa);
  const double zz = z * (1.0 - z);
  const double inf = std::numeric_limits<double>::infinity();
  if (ks == 0.0) {
    out.d1 = 2.0 * kappa * kappa - 1.0;
    out.d2 = 0.0;
  } else if (zz <= 0.0) {
    out.d1 = z <= 0.0 ? inf : -inf;
    out.d2 = -inf;
  } else {
    const double root = std::sqrt(zz);
    out.d1 = 2.0 * kappa * kappa - 1.0 + ks * (1.0 - 2.0 * z) / root;
    out.d2 = -ks / (2.0 * zz * root);
  }
  return out;
}

}  // namespace secopt
