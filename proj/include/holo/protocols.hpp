#pragma once

#include <vector>

#include "holo/metrics.hpp"

namespace holo {

/// One effective-qubit building block of a tight protocol: a code vector, an
/// ancilla spanning the block plane with it, the Rabi generator whose axis sits
/// at angle alpha from the code Bloch vector, and the rotating-frame
/// Hamiltonian that makes the transport parallel.
struct TightBlock {
  double theta = 0.0;        // target eigenphase in [0, 2pi)
  double alpha = 0.0;        // arccos(theta/pi - 1)
  Vector code_vector;        // |v_k>, unit vector in the computational space
  Vector ancilla_vector;     // |w_k>, orthogonal to the computational space
  Matrix rabi_generator;     // B_k, supported on span{|v_k>, |w_k>}
  Matrix rf_hamiltonian;     // H_k^RF, |v_k> eigenvector with eigenvalue eps - <v|B|v>
};

/// A bound-saturating parallel-transporting protocol for a target gate.
class TightProtocol {
 public:
  TightProtocol(NFrame frame, double tau, double epsilon, std::vector<TightBlock> blocks);

  Eigen::Index dim() const { return frame_.dim(); }
  Eigen::Index gate_size() const { return frame_.size(); }
  const NFrame& frame() const { return frame_; }
  double tau() const { return tau_; }
  double epsilon() const { return epsilon_; }
  const std::vector<TightBlock>& blocks() const { return blocks_; }

  /// Assembled lab Hamiltonian H_t = sum_k e^{-itB_k}(H_k^RF + B_k)e^{itB_k},
  /// a single rotated-constant path since the blocks are orthogonal.
  const HamiltonianPath& hamiltonian() const { return hamiltonian_; }

 private:
  NFrame frame_;
  double tau_;
  double epsilon_;
  std::vector<TightBlock> blocks_;
  HamiltonianPath hamiltonian_;
};

/// Builds the tight protocol for `target` on the computational frame V.
/// Requires ambient dimension >= 2n. epsilon = 0 gives a conventionally
/// parallel transporting Hamiltonian; any other epsilon gives the common
/// projective offset of the Remark construction.
TightProtocol build_tight(const GateSpec& target, const NFrame& V, double tau,
                          double epsilon = 0.0, const Tolerance& tol = {});

/// Rank-1 trajectory rho_t = e^{-itB_k} |v_k><v_k| e^{itB_k} of one block.
ProjectorPath block_trajectory(const TightBlock& block, double tau, size_t steps);

struct TightVerification {
  QslReport qsl;
  double closure_defect = 0.0;
  double holonomy_distance = 0.0;  // projective distance to the target
  double phase_mismatch = 0.0;     // entrywise gate mismatch (epsilon = 0 only)
  double length_error = 0.0;       // |length - L(target)|
  bool pass = false;
};

/// Target gate encoded in the protocol blocks: sum_k e^{i theta_k} u_k u_k^dag
/// with u_k the code vector in frame coordinates.
GateSpec protocol_target(const TightProtocol& p);

/// Propagates the assembled Hamiltonian and checks the four tightness clauses:
/// loop closure < 1e-6, holonomy distance < 1e-6 (plus global-phase match for
/// epsilon = 0), length within 1e-3 of the isoholonomic bound, and saturation
/// ratio within 1e-3 of 1. Throws VerificationError naming the first failed
/// clause.
TightVerification verify_tight(const TightProtocol& p, size_t steps,
                               const Tolerance& tol = {});

}  // namespace holo
