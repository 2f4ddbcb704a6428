#include "holo/metrics.hpp"

#include <cmath>
#include <utility>

namespace holo {

GateSpec::GateSpec(Matrix m, double structural_tol) : m_(std::move(m)) {
  require_unitary(m_, structural_tol, "GateSpec");
  spectrum_ = eig_unitary(m_, structural_tol);
}

ProjectiveGate::ProjectiveGate(GateSpec representative)
    : representative_(representative),
      canonical_([&] {
        const auto n = representative.size();
        double det_phase = std::arg(representative.matrix().determinant());
        Complex fix = std::exp(Complex(0.0, -det_phase / static_cast<double>(n)));
        return GateSpec(fix * representative.matrix());
      }()) {}

double curve_length(const ProjectorPath& P) {
  const double dt = P.dt();
  const size_t N = P.size();
  auto speed_at = [&](size_t k) {
    Matrix p_dot;
    if (k == 0)
      p_dot = (-3.0 * P[0].matrix() + 4.0 * P[1].matrix() - P[2].matrix()) / (2.0 * dt);
    else if (k == N - 1)
      p_dot = (3.0 * P[k].matrix() - 4.0 * P[k - 1].matrix() + P[k - 2].matrix()) / (2.0 * dt);
    else
      p_dot = (P[k + 1].matrix() - P[k - 1].matrix()) / (2.0 * dt);
    double sq = 0.5 * (p_dot * p_dot).trace().real();
    return std::sqrt(std::max(0.0, sq));
  };
  if (N == 2) {
    // Too short for central stencils; chord-rate estimate.
    Matrix p_dot = (P[1].matrix() - P[0].matrix()) / dt;
    return P.tau() * std::sqrt(std::max(0.0, 0.5 * (p_dot * p_dot).trace().real()));
  }
  double acc = 0.0;
  double prev = speed_at(0);
  for (size_t k = 1; k < N; ++k) {
    double cur = speed_at(k);
    acc += 0.5 * dt * (prev + cur);
    prev = cur;
  }
  return acc;
}

HolonomyResult holonomy(const ProjectorPath& P, const NFrame& V0, const Tolerance& tol) {
  LoopClosure closure = loop_closure(P, tol.transport);
  if (closure.defect >= tol.integration)
    throw OpenLoopError("holonomy: projector path does not close", closure.defect);
  FramePath lift = horizontal_lift(P, V0, tol);
  const Matrix& v_end = lift[lift.size() - 1].matrix();
  Matrix raw = V0.matrix().adjoint() * v_end;
  double udef = unitarity_defect(raw);
  if (udef > 3.0 * tol.integration)
    throw StructuralError("holonomy: lifted overlap is far from unitary", udef);
  Eigen::JacobiSVD<Matrix> svd(raw, Eigen::ComputeThinU | Eigen::ComputeThinV);
  Matrix gate = svd.matrixU() * svd.matrixV().adjoint();
  return {GateSpec(gate), v_end * V0.matrix().adjoint(), closure.defect, udef};
}

ProjectiveGate projective_holonomy(const ProjectorPath& P, const NFrame& V0,
                                   const Tolerance& tol) {
  return ProjectiveGate(holonomy(P, V0, tol).gate);
}

double isoholonomic_bound(const GateSpec& G) {
  double sum = 0.0;
  for (Eigen::Index j = 0; j < G.size(); ++j) {
    double th = G.eigenphases()(j);
    sum += th * (kTwoPi - th);
  }
  return std::sqrt(std::max(0.0, sum));
}

ProjectiveBound projective_isoholonomic_bound(const ProjectiveGate& G) {
  const auto& phases = G.representative().eigenphases();
  const auto n = phases.size();
  ProjectiveBound best;
  best.value = -1.0;
  for (Eigen::Index k = 0; k <= n; ++k) {
    double shift = (k == 0) ? 0.0 : phases(k - 1);
    double sum = 0.0;
    for (Eigen::Index l = 0; l < n; ++l) {
      double gap = std::abs(phases(l) - shift);
      sum += gap * (kTwoPi - gap);
    }
    double val = std::sqrt(std::max(0.0, sum));
    if (best.value < 0.0 || val < best.value) {
      best.value = val;
      best.argmin_shift = static_cast<int>(k);
    }
  }
  return best;
}

double skew_information(const Matrix& H, const Projector& P) {
  if (H.rows() != P.dim())
    throw StructuralError("skew_information: dimension mismatch");
  Matrix comm = H * P.matrix() - P.matrix() * H;
  double val = -0.5 * (comm * comm).trace().real();
  return std::max(0.0, val);
}

ProjectorPath driven_projector_path(const HamiltonianPath& H, const NFrame& V0,
                                    size_t steps, const Tolerance& tol) {
  if (H.dim() != V0.dim())
    throw StructuralError("driven_projector_path: dimension mismatch");
  PropagatorPath U = propagate(H, steps, tol);
  Matrix P0 = V0.matrix() * V0.matrix().adjoint();
  std::vector<Projector> out;
  out.reserve(steps + 1);
  for (size_t k = 0; k <= steps; ++k) {
    Matrix P = U[k] * P0 * U[k].adjoint();
    out.push_back(Projector::unchecked(0.5 * (P + P.adjoint()), V0.size()));
  }
  return ProjectorPath(H.tau(), std::move(out));
}

QslReport qsl_report(const HamiltonianPath& H, const NFrame& V0, const GateTarget& target,
                     size_t steps, const Tolerance& tol) {
  ProjectorPath path = driven_projector_path(H, V0, steps, tol);
  LoopClosure closure = loop_closure(path, tol.transport);
  if (closure.defect >= tol.integration)
    throw OpenLoopError("qsl_report: driven subspace loop does not close", closure.defect);
  QslReport rep;
  rep.tau = H.tau();
  rep.length = curve_length(path);
  if (std::holds_alternative<GateSpec>(target)) {
    rep.bound = isoholonomic_bound(std::get<GateSpec>(target));
    rep.bound_kind = "conventional";
  } else {
    rep.bound = projective_isoholonomic_bound(std::get<ProjectiveGate>(target)).value;
    rep.bound_kind = "projective";
  }
  const double dt = path.dt();
  double acc = 0.0;
  double prev = std::sqrt(skew_information(H.at(0.0), path[0]));
  for (size_t k = 1; k < path.size(); ++k) {
    double cur = std::sqrt(skew_information(H.at(static_cast<double>(k) * dt), path[k]));
    acc += 0.5 * dt * (prev + cur);
    prev = cur;
  }
  rep.mean_speed = acc / H.tau();
  if (rep.mean_speed < 1e-12)
    throw DegeneracyError("qsl_report: degenerate (stationary) path", rep.mean_speed);
  rep.tau_qsl = rep.bound / rep.mean_speed;
  rep.saturation_ratio = rep.tau_qsl / rep.tau;
  return rep;
}

double projective_distance(const GateSpec& G1, const GateSpec& G2) {
  if (G1.size() != G2.size())
    throw StructuralError("projective_distance: size mismatch");
  const auto n = static_cast<double>(G1.size());
  double overlap = std::abs((G1.matrix().adjoint() * G2.matrix()).trace()) / n;
  return std::sqrt(std::max(0.0, 1.0 - overlap * overlap));
}

}  // namespace holo
