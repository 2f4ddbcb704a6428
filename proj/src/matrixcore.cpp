#include "holo/matrixcore.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace holo {

double max_abs(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  return m.cwiseAbs().maxCoeff();
}

double hermiticity_defect(const Matrix& m) {
  return max_abs(m - m.adjoint().eval());
}

double unitarity_defect(const Matrix& m) {
  return max_abs((m.adjoint() * m - Matrix::Identity(m.cols(), m.cols())).eval());
}

double idempotency_defect(const Matrix& m) {
  return max_abs((m * m - m).eval());
}

void require_finite(const Matrix& m, const char* context) {
  if (!m.allFinite())
    throw StructuralError(std::string(context) + ": non-finite entries");
}

void require_hermitian(const Matrix& m, double tol, const char* context) {
  if (m.rows() != m.cols())
    throw StructuralError(std::string(context) + ": matrix not square");
  require_finite(m, context);
  double defect = hermiticity_defect(m);
  if (defect > tol)
    throw StructuralError(std::string(context) + ": matrix not Hermitian", defect);
}

void require_unitary(const Matrix& m, double tol, const char* context) {
  if (m.rows() != m.cols())
    throw StructuralError(std::string(context) + ": matrix not square");
  require_finite(m, context);
  double defect = unitarity_defect(m);
  if (defect > tol)
    throw StructuralError(std::string(context) + ": matrix not unitary", defect);
}

double principal_phase(Complex z, double tol) {
  double phi = std::arg(z);
  if (phi < 0) phi += kTwoPi;
  if (phi >= kTwoPi - tol) phi = 0.0;
  return phi;
}

Matrix expm_skew(const Matrix& H, double t, double structural_tol) {
  require_hermitian(H, structural_tol, "expm_skew");
  const auto d = H.rows();
  if (t == 0.0) return Matrix::Identity(d, d);
  Eigen::SelfAdjointEigenSolver<Matrix> es(H);
  Vector phases(d);
  for (Eigen::Index k = 0; k < d; ++k)
    phases(k) = std::exp(Complex(0.0, -t * es.eigenvalues()(k)));
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

HermitianEigen eig_hermitian(const Matrix& H, double structural_tol) {
  require_hermitian(H, structural_tol, "eig_hermitian");
  Eigen::SelfAdjointEigenSolver<Matrix> es(H);
  return {es.eigenvalues(), es.eigenvectors()};
}

UnitaryEigen eig_unitary(const Matrix& U, double structural_tol) {
  require_unitary(U, structural_tol, "eig_unitary");
  const auto n = U.rows();
  // A unitary is normal, so its Schur form is diagonal and the Schur basis is
  // an orthonormal eigenbasis, degeneracies included.
  Eigen::ComplexSchur<Matrix> schur(U);
  std::vector<Eigen::Index> order(static_cast<size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  RealVector raw(n);
  for (Eigen::Index k = 0; k < n; ++k)
    raw(k) = principal_phase(schur.matrixT()(k, k), structural_tol);
  std::stable_sort(order.begin(), order.end(),
                   [&raw](Eigen::Index a, Eigen::Index b) { return raw(a) < raw(b); });
  UnitaryEigen out;
  out.phases.resize(n);
  out.vectors.resize(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    out.phases(k) = raw(order[static_cast<size_t>(k)]);
    out.vectors.col(k) = schur.matrixU().col(order[static_cast<size_t>(k)]);
  }
  return out;
}

}  // namespace holo
