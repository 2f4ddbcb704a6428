#pragma once

#include <string>
#include <variant>

#include "holo/transport.hpp"

namespace holo {

/// An n x n unitary gate with cached eigenphases in [0, 2pi).
class GateSpec {
 public:
  explicit GateSpec(Matrix m, double structural_tol = 1e-10);

  Eigen::Index size() const { return m_.rows(); }
  const Matrix& matrix() const { return m_; }
  const RealVector& eigenphases() const { return spectrum_.phases; }
  const Matrix& eigenvectors() const { return spectrum_.vectors; }

 private:
  Matrix m_;
  UnitaryEigen spectrum_;
};

/// Phase-equivalence class of a gate, with a canonical det=1 representative.
class ProjectiveGate {
 public:
  explicit ProjectiveGate(GateSpec representative);

  const GateSpec& representative() const { return representative_; }
  const GateSpec& canonical() const { return canonical_; }

 private:
  GateSpec representative_;
  GateSpec canonical_;
};

struct QslReport {
  double length = 0.0;
  double bound = 0.0;
  double mean_speed = 0.0;
  double tau = 0.0;
  double tau_qsl = 0.0;
  double saturation_ratio = 0.0;
  std::string bound_kind;  // "conventional" | "projective"
};

struct HolonomyResult {
  GateSpec gate;                 // Gamma = V0^dag V_tau, polar-corrected
  Matrix transport_op;           // Pi_tau = V_tau V0^dag
  double closure_defect = 0.0;
  double unitarity_defect = 0.0;  // of the raw overlap before correction
};

/// Grassmann length: trapezoid quadrature of sqrt(tr(Pdot^2)/2).
double curve_length(const ProjectorPath& P);

/// Holonomy of a closed projector path via the horizontal lift from V0.
HolonomyResult holonomy(const ProjectorPath& P, const NFrame& V0,
                        const Tolerance& tol = {});

ProjectiveGate projective_holonomy(const ProjectorPath& P, const NFrame& V0,
                                   const Tolerance& tol = {});

/// L(Gamma) = sqrt(sum theta_j (2pi - theta_j)).
double isoholonomic_bound(const GateSpec& G);

struct ProjectiveBound {
  double value = 0.0;
  int argmin_shift = 0;  // index k of the minimizing candidate shift (0 => theta_0 = 0)
};

/// L(Gamma-bar): minimum over the n+1 candidate shifts {0, theta_1, ..., theta_n}.
ProjectiveBound projective_isoholonomic_bound(const ProjectiveGate& G);

/// Wigner-Yanase skew information I(H;P) = -tr([H,P]^2)/2.
double skew_information(const Matrix& H, const Projector& P);

using GateTarget = std::variant<GateSpec, ProjectiveGate>;

/// Propagates H, checks loop closure of the driven subspace, and assembles the
/// length / bound / mean-speed / QSL-time summary.
QslReport qsl_report(const HamiltonianPath& H, const NFrame& V0, const GateTarget& target,
                     size_t steps, const Tolerance& tol = {});

/// sqrt(1 - |tr(G1^dag G2)|^2 / n^2); zero iff projectively equal.
double projective_distance(const GateSpec& G1, const GateSpec& G2);

/// Projector path traced by span(V0) under the propagator of H.
ProjectorPath driven_projector_path(const HamiltonianPath& H, const NFrame& V0,
                                    size_t steps, const Tolerance& tol = {});

}  // namespace holo
