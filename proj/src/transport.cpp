#include "holo/transport.hpp"

#include <cmath>
#include <utility>

namespace holo {

FramePath::FramePath(double tau, std::vector<NFrame> samples)
    : tau_(tau), samples_(std::move(samples)) {
  if (tau_ <= 0.0) throw GridError("FramePath: tau must be positive");
  if (samples_.size() < 2) throw GridError("FramePath: need >= 2 samples");
  for (const auto& v : samples_)
    if (v.dim() != samples_.front().dim() || v.size() != samples_.front().size())
      throw StructuralError("FramePath: inconsistent frame shapes");
}

ShiftFunction ShiftFunction::constant(double eps, double tau, size_t samples) {
  if (samples < 2) throw GridError("ShiftFunction: need >= 2 samples");
  return {tau, std::vector<double>(samples, eps)};
}

double ShiftFunction::at(double t) const {
  if (values.size() < 2) throw GridError("ShiftFunction: need >= 2 samples");
  const double dt = tau / static_cast<double>(values.size() - 1);
  double s = t / dt;
  auto k = static_cast<long>(std::floor(s));
  if (k < 0) k = 0;
  if (k >= static_cast<long>(values.size()) - 1) k = static_cast<long>(values.size()) - 2;
  double w = s - static_cast<double>(k);
  return (1.0 - w) * values[static_cast<size_t>(k)] + w * values[static_cast<size_t>(k) + 1];
}

std::vector<double> ShiftFunction::cumulative() const {
  if (values.size() < 2) throw GridError("ShiftFunction: need >= 2 samples");
  const double dt = tau / static_cast<double>(values.size() - 1);
  std::vector<double> acc(values.size(), 0.0);
  for (size_t k = 1; k < values.size(); ++k)
    acc[k] = acc[k - 1] + 0.5 * dt * (values[k - 1] + values[k]);
  return acc;
}

Matrix connection_eval(const NFrame& V, const Matrix& X, double transport_tol) {
  if (X.rows() != V.dim() || X.cols() != V.size())
    throw StructuralError("connection_eval: tangent vector shape mismatch");
  Matrix sym = V.matrix().adjoint() * X;
  double asym = max_abs((sym + sym.adjoint()).eval());
  if (asym > transport_tol)
    throw TangencyError("connection_eval: X is not tangent at V", asym);
  return sym;
}

namespace {

void check_initial_span(const ProjectorPath& P, const NFrame& V0, double tol) {
  if (P.dim() != V0.dim() || P.rank() != V0.size())
    throw StructuralError("horizontal_lift: frame does not match path shape");
  double dev = max_abs((V0.matrix() * V0.matrix().adjoint() - P[0].matrix()).eval());
  if (dev > tol)
    throw StructuralError("horizontal_lift: V0 does not span the initial subspace", dev);
}

}  // namespace

FramePath horizontal_lift(const ProjectorPath& P, const NFrame& V0, const Tolerance& tol) {
  check_initial_span(P, V0, tol.structural);
  const double dt = P.dt();
  std::vector<NFrame> out;
  out.reserve(P.size());
  out.push_back(V0);
  Matrix V = V0.matrix();
  for (size_t k = 0; k + 1 < P.size(); ++k) {
    const Matrix& a = P[k].matrix();
    const Matrix& b = P[k + 1].matrix();
    Matrix p_mid = 0.5 * (a + b);
    Matrix p_dot = (b - a) / dt;
    // [Pdot, P] is skew-Hermitian; the step is an exact unitary.
    Matrix gen = p_dot * p_mid - p_mid * p_dot;
    V = expm_skew(Complex(0, 1) * gen, dt, 1e-8) * V;
    // Polar correction onto the arrival subspace.
    NFrame corrected = orthonormalize(b * V);
    V = corrected.matrix();
    out.push_back(std::move(corrected));
  }
  return FramePath(P.tau(), std::move(out));
}

FramePath projective_horizontal_lift(const ProjectorPath& P, const NFrame& V0,
                                     const ShiftFunction& eps, const Tolerance& tol) {
  FramePath base = horizontal_lift(P, V0, tol);
  const double dt = base.dt();
  std::vector<NFrame> out;
  out.reserve(base.size());
  double integral = 0.0;
  double prev = eps.at(0.0);
  for (size_t k = 0; k < base.size(); ++k) {
    if (k > 0) {
      double cur = eps.at(static_cast<double>(k) * dt);
      integral += 0.5 * dt * (prev + cur);
      prev = cur;
    }
    out.push_back(NFrame::unchecked(std::exp(Complex(0.0, integral)) * base[k].matrix()));
  }
  return FramePath(P.tau(), std::move(out));
}

namespace {

TransportReport residual_report(std::vector<double> residuals,
                                std::vector<double> epsilons, double transport_tol) {
  TransportReport rep;
  rep.residual_trace = std::move(residuals);
  rep.epsilon_trace = std::move(epsilons);
  rep.max_residual = 0.0;
  for (double r : rep.residual_trace) rep.max_residual = std::max(rep.max_residual, r);
  rep.tolerance = transport_tol;
  rep.pass = rep.max_residual < transport_tol;
  return rep;
}

TransportReport check_lab_impl(const HamiltonianPath& H, const NFrame& V0, size_t steps,
                               const Tolerance& tol, bool projective) {
  if (H.dim() != V0.dim())
    throw StructuralError("transport check: dimension mismatch");
  PropagatorPath U = propagate(H, steps, tol);
  const double dt = H.tau() / static_cast<double>(steps);
  const auto n = V0.size();
  std::vector<double> residuals(steps + 1), epsilons;
  if (projective) epsilons.resize(steps + 1);
  for (size_t k = 0; k <= steps; ++k) {
    double t = static_cast<double>(k) * dt;
    Matrix Vt = U[k] * V0.matrix();
    Matrix M = Vt.adjoint() * H.at(t) * Vt;
    if (projective) {
      double eps = M.trace().real() / static_cast<double>(n);
      epsilons[k] = eps;
      M -= eps * Matrix::Identity(n, n);
    }
    residuals[k] = max_abs(M);
  }
  return residual_report(std::move(residuals), std::move(epsilons), tol.transport);
}

TransportReport check_rotating_impl(const HamiltonianPath& H_rf, const RotatingFrame& R,
                                    const NFrame& V0, size_t steps, const Tolerance& tol,
                                    bool projective) {
  if (H_rf.dim() != R.dim() || H_rf.dim() != V0.dim())
    throw StructuralError("transport check: dimension mismatch");
  if (std::abs(H_rf.tau() - R.tau()) > 1e-12 * std::max(H_rf.tau(), R.tau()))
    throw GridError("transport check: duration mismatch");
  // In the rotating picture the frame evolves as V^RF_t = W_t R_0 V0 with W
  // the propagator of H^RF.
  PropagatorPath W = propagate(H_rf, steps, tol);
  HamiltonianPath pot = frame_potential(R);
  const double dt = H_rf.tau() / static_cast<double>(steps);
  const auto n = V0.size();
  Matrix start = R.at(0.0) * V0.matrix();
  std::vector<double> residuals(steps + 1), epsilons;
  if (projective) epsilons.resize(steps + 1);
  for (size_t k = 0; k <= steps; ++k) {
    double t = static_cast<double>(k) * dt;
    Matrix Vt = W[k] * start;
    Matrix M = Vt.adjoint() * (H_rf.at(t) - pot.at(t)) * Vt;
    if (projective) {
      double eps = M.trace().real() / static_cast<double>(n);
      epsilons[k] = eps;
      M -= eps * Matrix::Identity(n, n);
    }
    residuals[k] = max_abs(M);
  }
  return residual_report(std::move(residuals), std::move(epsilons), tol.transport);
}

}  // namespace

TransportReport check_parallel_lab(const HamiltonianPath& H, const NFrame& V0,
                                   size_t steps, const Tolerance& tol) {
  return check_lab_impl(H, V0, steps, tol, false);
}

TransportReport check_projective_lab(const HamiltonianPath& H, const NFrame& V0,
                                     size_t steps, const Tolerance& tol) {
  return check_lab_impl(H, V0, steps, tol, true);
}

TransportReport check_parallel_rotating(const HamiltonianPath& H_rf, const RotatingFrame& R,
                                        const NFrame& V0, size_t steps,
                                        const Tolerance& tol) {
  return check_rotating_impl(H_rf, R, V0, steps, tol, false);
}

TransportReport check_projective_rotating(const HamiltonianPath& H_rf,
                                          const RotatingFrame& R, const NFrame& V0,
                                          size_t steps, const Tolerance& tol) {
  return check_rotating_impl(H_rf, R, V0, steps, tol, true);
}

HamiltonianPath gauge_shift(const HamiltonianPath& H, const ShiftFunction& eps) {
  if (eps.values.size() < 2) throw GridError("gauge_shift: need >= 2 shift samples");
  if (std::abs(eps.tau - H.tau()) > 1e-12 * std::max(eps.tau, H.tau()))
    throw GridError("gauge_shift: duration mismatch");
  if (H.kind() == HamiltonianPath::Kind::Sampled &&
      eps.values.size() != H.samples().size())
    throw GridError("gauge_shift: shift grid does not match Hamiltonian grid");
  const size_t n_samples = H.kind() == HamiltonianPath::Kind::Sampled
                               ? H.samples().size()
                               : eps.values.size();
  const double dt = H.tau() / static_cast<double>(n_samples - 1);
  const Matrix id = Matrix::Identity(H.dim(), H.dim());
  std::vector<Matrix> out(n_samples);
  for (size_t k = 0; k < n_samples; ++k) {
    double t = static_cast<double>(k) * dt;
    out[k] = H.at(t) + eps.values[k] * id;
  }
  return HamiltonianPath::sampled(std::move(out), H.tau());
}

LoopClosure loop_closure(const ProjectorPath& P, double transport_tol) {
  double defect = hermitian_op_norm(P[P.size() - 1].matrix() - P[0].matrix());
  return {defect < transport_tol, defect};
}

}  // namespace holo
