#include "holo/frames.hpp"

#include <cmath>
#include <utility>

namespace holo {

NFrame::NFrame(Matrix m, double structural_tol) : m_(std::move(m)) {
  if (m_.rows() < 1 || m_.cols() < 1 || m_.cols() > m_.rows())
    throw StructuralError("NFrame: need 1 <= n <= d");
  require_finite(m_, "NFrame");
  double defect = unitarity_defect(m_);
  if (defect > structural_tol)
    throw StructuralError("NFrame: columns not orthonormal", defect);
}

NFrame NFrame::unchecked(Matrix m) { return NFrame(std::move(m), unchecked_t{}); }

Projector::Projector(Matrix m, double structural_tol) : m_(std::move(m)) {
  require_hermitian(m_, structural_tol, "Projector");
  double defect = idempotency_defect(m_);
  if (defect > structural_tol)
    throw StructuralError("Projector: not idempotent", defect);
  double tr = m_.trace().real();
  rank_ = static_cast<Eigen::Index>(std::lround(tr));
  if (std::abs(tr - static_cast<double>(rank_)) > structural_tol * static_cast<double>(m_.rows()) || rank_ < 1)
    throw StructuralError("Projector: trace not a positive integer", tr);
}

Projector Projector::unchecked(Matrix m, Eigen::Index rank) {
  return Projector(std::move(m), rank, unchecked_t{});
}

double hermitian_op_norm(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

ProjectorPath::ProjectorPath(double tau, std::vector<Projector> samples)
    : tau_(tau), samples_(std::move(samples)) {
  if (tau_ <= 0.0) throw GridError("ProjectorPath: tau must be positive");
  if (samples_.size() < 2) throw GridError("ProjectorPath: need at least 2 samples");
  for (size_t k = 1; k < samples_.size(); ++k) {
    if (samples_[k].dim() != samples_[0].dim() || samples_[k].rank() != samples_[0].rank())
      throw StructuralError("ProjectorPath: inconsistent dimension or rank");
    double gap = hermitian_op_norm(samples_[k].matrix() - samples_[k - 1].matrix());
    if (gap >= 0.5)
      throw GridError("ProjectorPath: under-resolved (adjacent samples " +
                      std::to_string(gap) + " apart)");
  }
}

Projector projector_of(const NFrame& V) {
  return Projector::unchecked(V.matrix() * V.matrix().adjoint(), V.size());
}

NFrame orthonormalize(const Matrix& M, double structural_tol) {
  if (M.rows() < 1 || M.cols() < 1 || M.cols() > M.rows())
    throw StructuralError("orthonormalize: need 1 <= n <= d");
  require_finite(M, "orthonormalize");
  Eigen::JacobiSVD<Matrix> svd(M, Eigen::ComputeThinU | Eigen::ComputeThinV);
  double smin = svd.singularValues().minCoeff();
  if (smin <= structural_tol)
    throw DegeneracyError("orthonormalize: rank-deficient input", smin);
  return NFrame::unchecked(svd.matrixU() * svd.matrixV().adjoint());
}

NFrame gauge_act(const NFrame& V, const Matrix& S, double structural_tol) {
  if (S.rows() != V.size() || S.cols() != V.size())
    throw StructuralError("gauge_act: gauge matrix must be n x n");
  require_unitary(S, structural_tol, "gauge_act");
  return NFrame::unchecked(V.matrix() * S);
}

PhaseMatch projectively_equal(const NFrame& V1, const NFrame& V2, double transport_tol) {
  if (V1.dim() != V2.dim() || V1.size() != V2.size())
    throw StructuralError("projectively_equal: shape mismatch");
  // V1 = e^{i theta} V2 iff every column overlap <v1_k|v2_k> equals e^{-i theta}.
  Complex first = V1.column(0).dot(V2.column(0));
  if (std::abs(std::abs(first) - 1.0) > transport_tol) return {};
  for (Eigen::Index k = 0; k < V1.size(); ++k) {
    Complex ov = V1.column(k).dot(V2.column(k));
    if (std::abs(ov - first) > transport_tol) return {};
  }
  double theta = -std::arg(first);
  if (theta < 0) theta += kTwoPi;
  // The overlaps only see the diagonal; confirm the frames match entrywise.
  double res = max_abs(V1.matrix() - std::exp(Complex(0, theta)) * V2.matrix());
  if (res > transport_tol) return {};
  return {true, theta};
}

}  // namespace holo
