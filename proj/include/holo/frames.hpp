#pragma once

#include <vector>

#include "holo/matrixcore.hpp"

namespace holo {

/// A point of the Stiefel manifold: d x n matrix with orthonormal columns.
class NFrame {
 public:
  explicit NFrame(Matrix m, double structural_tol = 1e-10);

  /// Skips the orthonormality check; for internal hot paths whose output is
  /// orthonormal by construction.
  static NFrame unchecked(Matrix m);

  Eigen::Index dim() const { return m_.rows(); }
  Eigen::Index size() const { return m_.cols(); }
  const Matrix& matrix() const { return m_; }
  Vector column(Eigen::Index k) const { return m_.col(k); }

 private:
  struct unchecked_t {};
  NFrame(Matrix m, unchecked_t) : m_(std::move(m)) {}
  Matrix m_;
};

/// A point of the Grassmann manifold: rank-n Hermitian idempotent.
class Projector {
 public:
  explicit Projector(Matrix m, double structural_tol = 1e-10);
  static Projector unchecked(Matrix m, Eigen::Index rank);

  Eigen::Index dim() const { return m_.rows(); }
  Eigen::Index rank() const { return rank_; }
  const Matrix& matrix() const { return m_; }

 private:
  struct unchecked_t {};
  Projector(Matrix m, Eigen::Index rank, unchecked_t) : m_(std::move(m)), rank_(rank) {}
  Matrix m_;
  Eigen::Index rank_ = 0;
};

/// Uniform-grid curve of projectors on [0, tau].
class ProjectorPath {
 public:
  ProjectorPath(double tau, std::vector<Projector> samples);

  double tau() const { return tau_; }
  double dt() const { return tau_ / static_cast<double>(samples_.size() - 1); }
  Eigen::Index dim() const { return samples_.front().dim(); }
  Eigen::Index rank() const { return samples_.front().rank(); }
  size_t size() const { return samples_.size(); }
  const Projector& operator[](size_t k) const { return samples_[k]; }
  const std::vector<Projector>& samples() const { return samples_; }

 private:
  double tau_;
  std::vector<Projector> samples_;
};

/// Span map of the Stiefel-Grassmann bundle: V -> V V^dag.
Projector projector_of(const NFrame& V);

/// Closest orthonormal frame with the same column span (polar factor).
NFrame orthonormalize(const Matrix& M, double structural_tol = 1e-10);

/// Right action of U(n): V -> V S.
NFrame gauge_act(const NFrame& V, const Matrix& S, double structural_tol = 1e-10);

struct PhaseMatch {
  bool equal = false;
  double theta = 0.0;  // witness: V1 = e^{i theta} V2 when equal
};

/// Decides V1 = e^{i theta} V2 via the column overlaps <v1_k|v2_k>.
PhaseMatch projectively_equal(const NFrame& V1, const NFrame& V2,
                              double transport_tol = 1e-8);

/// Largest-singular-value norm of a Hermitian matrix (by spectrum).
double hermitian_op_norm(const Matrix& m);

}  // namespace holo
