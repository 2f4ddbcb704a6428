#pragma once

#include <vector>

#include "holo/dynamics.hpp"
#include "holo/frames.hpp"

namespace holo {

/// Uniform-grid curve of n-frames on [0, tau].
class FramePath {
 public:
  FramePath(double tau, std::vector<NFrame> samples);

  double tau() const { return tau_; }
  double dt() const { return tau_ / static_cast<double>(samples_.size() - 1); }
  Eigen::Index dim() const { return samples_.front().dim(); }
  Eigen::Index rank() const { return samples_.front().size(); }
  size_t size() const { return samples_.size(); }
  const NFrame& operator[](size_t k) const { return samples_[k]; }
  const std::vector<NFrame>& samples() const { return samples_; }

 private:
  double tau_;
  std::vector<NFrame> samples_;
};

/// Outcome of a parallel-transport condition check.
struct TransportReport {
  double max_residual = 0.0;
  std::vector<double> residual_trace;
  std::vector<double> epsilon_trace;  // projective checks only
  bool pass = false;
  double tolerance = 0.0;  // the transport tolerance the verdict used
};

/// Real-valued energy shift epsilon_t sampled on a uniform grid.
struct ShiftFunction {
  double tau = 0.0;
  std::vector<double> values;

  static ShiftFunction constant(double eps, double tau, size_t samples = 2);
  double at(double t) const;  // linear interpolation
  /// Trapezoid cumulative integral up to grid point k.
  std::vector<double> cumulative() const;
};

/// Aharonov-Anandan connection A(X) = V^dag X for a tangent vector X at V.
Matrix connection_eval(const NFrame& V, const Matrix& X, double transport_tol = 1e-8);

/// Horizontal lift of a projector path starting at V0. Integrates
/// Vdot = [Pdot, P] V with midpoint exponential steps and per-step polar
/// correction onto the current subspace.
FramePath horizontal_lift(const ProjectorPath& P, const NFrame& V0,
                          const Tolerance& tol = {});

/// Lift with the central-fiber offset: V^dag Vdot = i eps_t 1_n. Equals the
/// horizontal lift multiplied by exp(i \int_0^t eps).
FramePath projective_horizontal_lift(const ProjectorPath& P, const NFrame& V0,
                                     const ShiftFunction& eps,
                                     const Tolerance& tol = {});

/// Lab-frame condition <v_k|U^dag H U|v_l> = 0.
TransportReport check_parallel_lab(const HamiltonianPath& H, const NFrame& V0,
                                   size_t steps, const Tolerance& tol = {});

/// Rotating-frame condition <v^RF_k|H^RF - A^RF|v^RF_l> = 0.
TransportReport check_parallel_rotating(const HamiltonianPath& H_rf,
                                        const RotatingFrame& R, const NFrame& V0,
                                        size_t steps, const Tolerance& tol = {});

/// Projective lab condition <v_k|H|v_l> = eps_t delta_kl, with eps_t estimated
/// as the real normalized trace.
TransportReport check_projective_lab(const HamiltonianPath& H, const NFrame& V0,
                                     size_t steps, const Tolerance& tol = {});

/// Projective condition in a rotating frame.
TransportReport check_projective_rotating(const HamiltonianPath& H_rf,
                                          const RotatingFrame& R, const NFrame& V0,
                                          size_t steps, const Tolerance& tol = {});

/// H_t + eps_t * identity.
HamiltonianPath gauge_shift(const HamiltonianPath& H, const ShiftFunction& eps);

struct LoopClosure {
  bool closed = false;
  double defect = 0.0;  // operator norm of P_tau - P_0
};

LoopClosure loop_closure(const ProjectorPath& P, double transport_tol = 1e-8);

}  // namespace holo
