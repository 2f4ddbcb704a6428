#pragma once

#include <optional>
#include <vector>

#include "holo/frames.hpp"
#include "holo/matrixcore.hpp"

namespace holo {

/// Time-dependent Hermitian operator on [0, tau].
///
/// Kinds:
///   Constant          H_t = H
///   RotatedConstant   H_t = e^{-itB} H0 e^{itB}
///   Sampled           Hermitian samples on a uniform grid, linear interpolation
class HamiltonianPath {
 public:
  enum class Kind { Constant, RotatedConstant, Sampled };

  static HamiltonianPath constant(Matrix H, double tau, double structural_tol = 1e-10);
  static HamiltonianPath rotated_constant(Matrix H0, Matrix B, double tau,
                                          double structural_tol = 1e-10);
  static HamiltonianPath sampled(std::vector<Matrix> samples, double tau,
                                 double structural_tol = 1e-10);

  Kind kind() const { return kind_; }
  Eigen::Index dim() const { return dim_; }
  double tau() const { return tau_; }

  /// Number of grid intervals for the Sampled kind, 0 otherwise.
  size_t grid_intervals() const;

  const Matrix& base() const { return h0_; }        // Constant / RotatedConstant
  const Matrix& generator() const { return b_; }    // RotatedConstant
  const std::vector<Matrix>& samples() const { return samples_; }

  /// Evaluate H_t (linear interpolation between samples for the Sampled kind).
  Matrix at(double t) const;

 private:
  HamiltonianPath() = default;
  Kind kind_ = Kind::Constant;
  Eigen::Index dim_ = 0;
  double tau_ = 0.0;
  Matrix h0_, b_;
  HermitianEigen b_eig_;  // cached for RotatedConstant evaluation
  std::vector<Matrix> samples_;
};

/// Time-dependent unitary frame change R_t on [0, tau].
class RotatingFrame {
 public:
  enum class Kind { ConstantGenerator, Sampled };

  /// R_t = e^{itB} with B Hermitian.
  static RotatingFrame constant_generator(Matrix B, double tau,
                                          double structural_tol = 1e-10);
  static RotatingFrame sampled(std::vector<Matrix> unitaries, double tau,
                               double structural_tol = 1e-10);

  Kind kind() const { return kind_; }
  Eigen::Index dim() const { return dim_; }
  double tau() const { return tau_; }
  size_t grid_intervals() const;
  const Matrix& generator() const { return b_; }
  const std::vector<Matrix>& samples() const { return samples_; }

  /// Evaluate R_t. For the Sampled kind t must lie on the grid.
  Matrix at(double t) const;

 private:
  RotatingFrame() = default;
  Kind kind_ = Kind::ConstantGenerator;
  Eigen::Index dim_ = 0;
  double tau_ = 0.0;
  Matrix b_;
  HermitianEigen b_eig_;
  std::vector<Matrix> samples_;
};

/// Uniform-grid propagator samples with U_0 = 1.
class PropagatorPath {
 public:
  PropagatorPath(double tau, std::vector<Matrix> samples,
                 double structural_tol = 1e-10);

  double tau() const { return tau_; }
  double dt() const { return tau_ / static_cast<double>(samples_.size() - 1); }
  Eigen::Index dim() const { return samples_.front().rows(); }
  size_t size() const { return samples_.size(); }
  const Matrix& operator[](size_t k) const { return samples_[k]; }
  const std::vector<Matrix>& samples() const { return samples_; }

 private:
  double tau_;
  std::vector<Matrix> samples_;
};

/// Midpoint exponential integrator: U_{t+dt} = e^{-i dt H(t+dt/2)} U_t.
/// Every sample is exactly unitary. For the Sampled kind, steps must be a
/// multiple of the number of grid intervals.
PropagatorPath propagate(const HamiltonianPath& H, size_t steps,
                         const Tolerance& tol = {});

/// Rotational potential A^RF_t = i Rdot_t R_t^dag. Equals -B exactly for the
/// constant-generator kind; central differences for sampled frames.
HamiltonianPath frame_potential(const RotatingFrame& R);

/// H^RF_t = R_t H_t R_t^dag + A^RF_t. `grid` picks the output sample count
/// for the general (sampled) case; 0 inherits the finest input grid or 1024.
HamiltonianPath to_rotating_frame(const HamiltonianPath& H, const RotatingFrame& R,
                                  size_t grid = 0);

/// Inverse transformation: H_t = R_t^dag (H^RF_t - A^RF_t) R_t.
HamiltonianPath from_rotating_frame(const HamiltonianPath& H_rf, const RotatingFrame& R,
                                    size_t grid = 0);

}  // namespace holo
