#include "holo/protocols.hpp"

#include <cmath>
#include <sstream>
#include <utility>

namespace holo {

namespace {

HamiltonianPath assemble(const std::vector<TightBlock>& blocks, Eigen::Index d,
                         double tau) {
  Matrix H0 = Matrix::Zero(d, d);
  Matrix B = Matrix::Zero(d, d);
  for (const auto& blk : blocks) {
    H0 += blk.rf_hamiltonian + blk.rabi_generator;
    B += blk.rabi_generator;
  }
  return HamiltonianPath::rotated_constant(0.5 * (H0 + H0.adjoint()),
                                           0.5 * (B + B.adjoint()), tau);
}

}  // namespace

TightProtocol::TightProtocol(NFrame frame, double tau, double epsilon,
                             std::vector<TightBlock> blocks)
    : frame_(std::move(frame)),
      tau_(tau),
      epsilon_(epsilon),
      blocks_(std::move(blocks)),
      hamiltonian_(assemble(blocks_, frame_.dim(), tau_)) {
  if (dim() < 2 * gate_size())
    throw CodimensionError("TightProtocol: ambient dimension must be >= 2n");
  if (static_cast<Eigen::Index>(blocks_.size()) != gate_size())
    throw StructuralError("TightProtocol: need one block per computational dimension");
}

TightProtocol build_tight(const GateSpec& target, const NFrame& V, double tau,
                          double epsilon, const Tolerance& tol) {
  const auto d = V.dim();
  const auto n = target.size();
  if (V.size() != n)
    throw StructuralError("build_tight: frame size does not match gate size");
  if (d < 2 * n)
    throw CodimensionError("build_tight: ambient dimension " + std::to_string(d) +
                           " < 2n = " + std::to_string(2 * n));
  if (tau <= 0.0) throw GridError("build_tight: tau must be positive");

  // Ancilla basis: orthonormalize the standard basis against span(V) and keep
  // the first n independent directions.
  Matrix anc(d, n);
  Eigen::Index found = 0;
  Matrix q = V.matrix();  // accumulated orthonormal columns
  for (Eigen::Index j = 0; j < d && found < n; ++j) {
    Vector e = Vector::Zero(d);
    e(j) = 1.0;
    Vector r = e - q * (q.adjoint() * e);
    double nr = r.norm();
    if (nr > 1e-8) {
      r /= nr;
      anc.col(found++) = r;
      q.conservativeResize(Eigen::NoChange, q.cols() + 1);
      q.col(q.cols() - 1) = r;
    }
  }
  if (found < n)
    throw DegeneracyError("build_tight: could not build an ancilla basis");

  const double omega = kPi / tau;  // B_k eigenvalues +-pi/tau, period tau
  std::vector<TightBlock> blocks;
  blocks.reserve(static_cast<size_t>(n));
  for (Eigen::Index k = 0; k < n; ++k) {
    TightBlock blk;
    blk.theta = target.eigenphases()(k);
    blk.alpha = std::acos(std::clamp(blk.theta / kPi - 1.0, -1.0, 1.0));
    blk.code_vector = V.matrix() * target.eigenvectors().col(k);
    blk.ancilla_vector = anc.col(k);
    const Vector& v = blk.code_vector;
    const Vector& w = blk.ancilla_vector;
    Matrix sz = v * v.adjoint() - w * w.adjoint();
    Matrix sx = v * w.adjoint() + w * v.adjoint();
    blk.rabi_generator = omega * (std::sin(blk.alpha) * sx + std::cos(blk.alpha) * sz);
    double lambda = epsilon - omega * std::cos(blk.alpha);
    blk.rf_hamiltonian = lambda * (v * v.adjoint());
    blocks.push_back(std::move(blk));
  }
  (void)tol;
  return TightProtocol(V, tau, epsilon, std::move(blocks));
}

ProjectorPath block_trajectory(const TightBlock& block, double tau, size_t steps) {
  if (steps < 2) throw GridError("block_trajectory: need steps >= 2");
  const auto d = block.code_vector.size();
  HermitianEigen be = eig_hermitian(0.5 * (block.rabi_generator +
                                           block.rabi_generator.adjoint()));
  Matrix rho0 = block.code_vector * block.code_vector.adjoint();
  std::vector<Projector> out;
  out.reserve(steps + 1);
  const double dt = tau / static_cast<double>(steps);
  for (size_t k = 0; k <= steps; ++k) {
    double t = static_cast<double>(k) * dt;
    Vector ph(d);
    for (Eigen::Index j = 0; j < d; ++j)
      ph(j) = std::exp(Complex(0.0, -t * be.values(j)));
    Matrix R = be.vectors * ph.asDiagonal() * be.vectors.adjoint();
    Matrix rho = R * rho0 * R.adjoint();
    out.push_back(Projector::unchecked(0.5 * (rho + rho.adjoint()), 1));
  }
  return ProjectorPath(tau, std::move(out));
}

GateSpec protocol_target(const TightProtocol& p) {
  const auto n = p.gate_size();
  Matrix gamma = Matrix::Zero(n, n);
  for (const auto& blk : p.blocks()) {
    Vector u = p.frame().matrix().adjoint() * blk.code_vector;
    gamma += std::exp(Complex(0.0, blk.theta)) * (u * u.adjoint());
  }
  Eigen::JacobiSVD<Matrix> svd(gamma, Eigen::ComputeThinU | Eigen::ComputeThinV);
  return GateSpec(svd.matrixU() * svd.matrixV().adjoint());
}

TightVerification verify_tight(const TightProtocol& p, size_t steps,
                               const Tolerance& tol) {
  constexpr double kClosureTol = 1e-6;
  constexpr double kHolonomyTol = 1e-6;
  constexpr double kLengthTol = 1e-3;
  constexpr double kSaturationTol = 1e-3;

  GateSpec target = protocol_target(p);
  const HamiltonianPath& H = p.hamiltonian();
  const NFrame& V = p.frame();
  PropagatorPath U = propagate(H, steps, tol);

  Matrix P0 = V.matrix() * V.matrix().adjoint();
  std::vector<Projector> samples;
  samples.reserve(steps + 1);
  for (size_t k = 0; k <= steps; ++k) {
    Matrix P = U[k] * P0 * U[k].adjoint();
    samples.push_back(Projector::unchecked(0.5 * (P + P.adjoint()), V.size()));
  }
  ProjectorPath path(H.tau(), std::move(samples));

  TightVerification rep;
  rep.closure_defect = loop_closure(path, tol.transport).defect;
  if (rep.closure_defect >= kClosureTol)
    throw VerificationError("verify_tight: clause (a) loop closure failed, defect " +
                            std::to_string(rep.closure_defect));

  // For a parallel transporting Hamiltonian U_t V is itself the horizontal
  // lift, so the holonomy is the polar-corrected frame overlap.
  Matrix raw = V.matrix().adjoint() * U[steps] * V.matrix();
  Eigen::JacobiSVD<Matrix> svd(raw, Eigen::ComputeThinU | Eigen::ComputeThinV);
  GateSpec measured(svd.matrixU() * svd.matrixV().adjoint());
  rep.holonomy_distance = projective_distance(measured, target);
  if (rep.holonomy_distance >= kHolonomyTol)
    throw VerificationError("verify_tight: clause (b) holonomy distance " +
                            std::to_string(rep.holonomy_distance));
  if (p.epsilon() == 0.0) {
    rep.phase_mismatch = max_abs((measured.matrix() - target.matrix()).eval());
    if (rep.phase_mismatch >= kHolonomyTol)
      throw VerificationError("verify_tight: clause (b) global phase mismatch " +
                              std::to_string(rep.phase_mismatch));
  }

  rep.qsl.tau = H.tau();
  rep.qsl.length = curve_length(path);
  rep.qsl.bound = isoholonomic_bound(target);
  rep.qsl.bound_kind = "conventional";
  rep.length_error = std::abs(rep.qsl.length - rep.qsl.bound);
  if (rep.length_error >= kLengthTol)
    throw VerificationError("verify_tight: clause (c) length error " +
                            std::to_string(rep.length_error));

  const double dt = path.dt();
  double acc = 0.0;
  double prev = std::sqrt(skew_information(H.at(0.0), path[0]));
  for (size_t k = 1; k < path.size(); ++k) {
    double cur = std::sqrt(skew_information(H.at(static_cast<double>(k) * dt), path[k]));
    acc += 0.5 * dt * (prev + cur);
    prev = cur;
  }
  rep.qsl.mean_speed = acc / H.tau();
  if (rep.qsl.mean_speed < 1e-12) {
    // Identity-like target: zero-length loop saturates trivially.
    rep.qsl.tau_qsl = 0.0;
    rep.qsl.saturation_ratio = rep.qsl.bound < 1e-9 ? 1.0 : 0.0;
  } else {
    rep.qsl.tau_qsl = rep.qsl.bound / rep.qsl.mean_speed;
    rep.qsl.saturation_ratio = rep.qsl.tau_qsl / rep.qsl.tau;
  }
  if (std::abs(rep.qsl.saturation_ratio - 1.0) >= kSaturationTol)
    throw VerificationError("verify_tight: clause (d) saturation ratio " +
                            std::to_string(rep.qsl.saturation_ratio));
  rep.pass = true;
  return rep;
}

}  // namespace holo
