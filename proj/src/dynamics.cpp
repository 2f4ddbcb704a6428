#include "holo/dynamics.hpp"

#include <cmath>
#include <utility>

namespace holo {

namespace {

Matrix hermitize(const Matrix& m) { return 0.5 * (m + m.adjoint()); }

/// e^{is L} V diag-conjugation helper from a cached eigendecomposition.
Matrix conjugation_unitary(const HermitianEigen& eig, double s) {
  Vector ph(eig.values.size());
  for (Eigen::Index k = 0; k < eig.values.size(); ++k)
    ph(k) = std::exp(Complex(0.0, s * eig.values(k)));
  return eig.vectors * ph.asDiagonal() * eig.vectors.adjoint();
}

}  // namespace

HamiltonianPath HamiltonianPath::constant(Matrix H, double tau, double structural_tol) {
  require_hermitian(H, structural_tol, "HamiltonianPath::constant");
  if (tau <= 0.0) throw GridError("HamiltonianPath: tau must be positive");
  HamiltonianPath p;
  p.kind_ = Kind::Constant;
  p.dim_ = H.rows();
  p.tau_ = tau;
  p.h0_ = std::move(H);
  return p;
}

HamiltonianPath HamiltonianPath::rotated_constant(Matrix H0, Matrix B, double tau,
                                                  double structural_tol) {
  require_hermitian(H0, structural_tol, "HamiltonianPath::rotated_constant H0");
  require_hermitian(B, structural_tol, "HamiltonianPath::rotated_constant B");
  if (H0.rows() != B.rows())
    throw StructuralError("HamiltonianPath: H0 and B dimension mismatch");
  if (tau <= 0.0) throw GridError("HamiltonianPath: tau must be positive");
  HamiltonianPath p;
  p.kind_ = Kind::RotatedConstant;
  p.dim_ = H0.rows();
  p.tau_ = tau;
  p.h0_ = std::move(H0);
  p.b_ = std::move(B);
  p.b_eig_ = eig_hermitian(p.b_, structural_tol);
  return p;
}

HamiltonianPath HamiltonianPath::sampled(std::vector<Matrix> samples, double tau,
                                         double structural_tol) {
  if (samples.size() < 2) throw GridError("HamiltonianPath::sampled: need >= 2 samples");
  if (tau <= 0.0) throw GridError("HamiltonianPath: tau must be positive");
  for (const auto& h : samples) {
    require_hermitian(h, structural_tol, "HamiltonianPath::sampled");
    if (h.rows() != samples.front().rows())
      throw StructuralError("HamiltonianPath::sampled: inconsistent dimensions");
  }
  HamiltonianPath p;
  p.kind_ = Kind::Sampled;
  p.dim_ = samples.front().rows();
  p.tau_ = tau;
  p.samples_ = std::move(samples);
  return p;
}

size_t HamiltonianPath::grid_intervals() const {
  return kind_ == Kind::Sampled ? samples_.size() - 1 : 0;
}

Matrix HamiltonianPath::at(double t) const {
  switch (kind_) {
    case Kind::Constant:
      return h0_;
    case Kind::RotatedConstant: {
      Matrix R = conjugation_unitary(b_eig_, -t);  // e^{-itB}
      return R * h0_ * R.adjoint();
    }
    case Kind::Sampled: {
      const double dt = tau_ / static_cast<double>(samples_.size() - 1);
      double s = t / dt;
      auto k = static_cast<Eigen::Index>(std::floor(s));
      if (k < 0) k = 0;
      if (k >= static_cast<Eigen::Index>(samples_.size()) - 1)
        k = static_cast<Eigen::Index>(samples_.size()) - 2;
      double w = s - static_cast<double>(k);
      return (1.0 - w) * samples_[static_cast<size_t>(k)] +
             w * samples_[static_cast<size_t>(k) + 1];
    }
  }
  throw Error("HamiltonianPath::at: unreachable");
}

RotatingFrame RotatingFrame::constant_generator(Matrix B, double tau,
                                                double structural_tol) {
  require_hermitian(B, structural_tol, "RotatingFrame::constant_generator");
  if (tau <= 0.0) throw GridError("RotatingFrame: tau must be positive");
  RotatingFrame r;
  r.kind_ = Kind::ConstantGenerator;
  r.dim_ = B.rows();
  r.tau_ = tau;
  r.b_ = std::move(B);
  r.b_eig_ = eig_hermitian(r.b_, structural_tol);
  return r;
}

RotatingFrame RotatingFrame::sampled(std::vector<Matrix> unitaries, double tau,
                                     double structural_tol) {
  if (unitaries.size() < 2) throw GridError("RotatingFrame::sampled: need >= 2 samples");
  if (tau <= 0.0) throw GridError("RotatingFrame: tau must be positive");
  for (const auto& u : unitaries) {
    require_unitary(u, structural_tol, "RotatingFrame::sampled");
    if (u.rows() != unitaries.front().rows())
      throw StructuralError("RotatingFrame::sampled: inconsistent dimensions");
  }
  RotatingFrame r;
  r.kind_ = Kind::Sampled;
  r.dim_ = unitaries.front().rows();
  r.tau_ = tau;
  r.samples_ = std::move(unitaries);
  return r;
}

size_t RotatingFrame::grid_intervals() const {
  return kind_ == Kind::Sampled ? samples_.size() - 1 : 0;
}

Matrix RotatingFrame::at(double t) const {
  if (kind_ == Kind::ConstantGenerator) return conjugation_unitary(b_eig_, t);
  const double dt = tau_ / static_cast<double>(samples_.size() - 1);
  double s = t / dt;
  auto k = static_cast<Eigen::Index>(std::llround(s));
  if (k < 0 || k >= static_cast<Eigen::Index>(samples_.size()) ||
      std::abs(s - static_cast<double>(k)) > 1e-9)
    throw GridError("RotatingFrame::at: sampled frames are defined on grid points only");
  return samples_[static_cast<size_t>(k)];
}

PropagatorPath::PropagatorPath(double tau, std::vector<Matrix> samples,
                               double structural_tol)
    : tau_(tau), samples_(std::move(samples)) {
  if (tau_ <= 0.0) throw GridError("PropagatorPath: tau must be positive");
  if (samples_.size() < 2) throw GridError("PropagatorPath: need >= 2 samples");
  for (const auto& u : samples_)
    require_unitary(u, structural_tol, "PropagatorPath");
  double dev = max_abs(samples_.front() -
                       Matrix::Identity(samples_.front().rows(), samples_.front().rows()));
  if (dev > structural_tol)
    throw StructuralError("PropagatorPath: U_0 must be the identity", dev);
}

PropagatorPath propagate(const HamiltonianPath& H, size_t steps, const Tolerance& tol) {
  if (steps < 2) throw GridError("propagate: need steps >= 2");
  if (H.kind() == HamiltonianPath::Kind::Sampled && steps % H.grid_intervals() != 0)
    throw GridError("propagate: steps must be a multiple of the sample grid intervals");
  const double dt = H.tau() / static_cast<double>(steps);
  std::vector<Matrix> out;
  out.reserve(steps + 1);
  out.push_back(Matrix::Identity(H.dim(), H.dim()));
  if (H.kind() == HamiltonianPath::Kind::Constant) {
    const Matrix step = expm_skew(H.base(), dt, tol.structural);
    for (size_t k = 0; k < steps; ++k) out.push_back(step * out.back());
  } else {
    for (size_t k = 0; k < steps; ++k) {
      double t_mid = (static_cast<double>(k) + 0.5) * dt;
      out.push_back(expm_skew(H.at(t_mid), dt, tol.structural) * out.back());
    }
  }
  return PropagatorPath(H.tau(), std::move(out), tol.structural);
}

HamiltonianPath frame_potential(const RotatingFrame& R) {
  if (R.kind() == RotatingFrame::Kind::ConstantGenerator)
    return HamiltonianPath::constant(-R.generator(), R.tau());
  const auto& r = R.samples();
  if (r.size() < 3)
    throw GridError("frame_potential: central differencing needs >= 3 samples");
  const double dt = R.tau() / static_cast<double>(r.size() - 1);
  std::vector<Matrix> out(r.size());
  const Complex i_unit(0.0, 1.0);
  for (size_t k = 0; k < r.size(); ++k) {
    Matrix rdot;
    if (k == 0)
      rdot = (-3.0 * r[0] + 4.0 * r[1] - r[2]) / (2.0 * dt);
    else if (k == r.size() - 1)
      rdot = (3.0 * r[k] - 4.0 * r[k - 1] + r[k - 2]) / (2.0 * dt);
    else
      rdot = (r[k + 1] - r[k - 1]) / (2.0 * dt);
    out[k] = hermitize(i_unit * rdot * r[k].adjoint());
  }
  return HamiltonianPath::sampled(std::move(out), R.tau());
}

namespace {

size_t pick_grid(const HamiltonianPath& H, const RotatingFrame& R, size_t grid) {
  size_t h_iv = H.grid_intervals();
  size_t r_iv = R.grid_intervals();
  if (h_iv && r_iv && h_iv != r_iv)
    throw GridError("rotating-frame transform: sampled grids disagree");
  if (h_iv) return h_iv;
  if (r_iv) return r_iv;
  return grid ? grid : 1024;
}

void check_compat(const HamiltonianPath& H, const RotatingFrame& R) {
  if (H.dim() != R.dim())
    throw StructuralError("rotating-frame transform: dimension mismatch");
  if (std::abs(H.tau() - R.tau()) > 1e-12 * std::max(H.tau(), R.tau()))
    throw GridError("rotating-frame transform: duration mismatch");
}

}  // namespace

HamiltonianPath to_rotating_frame(const HamiltonianPath& H, const RotatingFrame& R,
                                  size_t grid) {
  check_compat(H, R);
  if (R.kind() == RotatingFrame::Kind::ConstantGenerator &&
      H.kind() == HamiltonianPath::Kind::Constant) {
    // R_t H R_t^dag - B = e^{itB}(H - B)e^{-itB}
    return HamiltonianPath::rotated_constant(H.base() - R.generator(), -R.generator(),
                                             H.tau());
  }
  size_t n_iv = pick_grid(H, R, grid);
  HamiltonianPath pot = frame_potential(R);
  const double dt = H.tau() / static_cast<double>(n_iv);
  std::vector<Matrix> out(n_iv + 1);
  for (size_t k = 0; k <= n_iv; ++k) {
    double t = static_cast<double>(k) * dt;
    Matrix Rt = R.at(t);
    out[k] = hermitize(Rt * H.at(t) * Rt.adjoint() + pot.at(t));
  }
  return HamiltonianPath::sampled(std::move(out), H.tau());
}

HamiltonianPath from_rotating_frame(const HamiltonianPath& H_rf, const RotatingFrame& R,
                                    size_t grid) {
  check_compat(H_rf, R);
  if (R.kind() == RotatingFrame::Kind::ConstantGenerator &&
      H_rf.kind() == HamiltonianPath::Kind::Constant) {
    // R_t^dag (H_rf + B) R_t = e^{-itB}(H_rf + B)e^{itB}
    return HamiltonianPath::rotated_constant(H_rf.base() + R.generator(), R.generator(),
                                             H_rf.tau());
  }
  size_t n_iv = pick_grid(H_rf, R, grid);
  HamiltonianPath pot = frame_potential(R);
  const double dt = H_rf.tau() / static_cast<double>(n_iv);
  std::vector<Matrix> out(n_iv + 1);
  for (size_t k = 0; k <= n_iv; ++k) {
    double t = static_cast<double>(k) * dt;
    Matrix Rt = R.at(t);
    out[k] = hermitize(Rt.adjoint() * (H_rf.at(t) - pot.at(t)) * Rt);
  }
  return HamiltonianPath::sampled(std::move(out), H_rf.tau());
}

}  // namespace holo
