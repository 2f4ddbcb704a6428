// Acceptance suite: one test case per criterion, each printing a single
// PASS/FAIL line. All tolerances are pinned here.
#include <doctest.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <nlohmann/json.hpp>

#include "holo/json_io.hpp"
#include "holo/protocols.hpp"
#include "oracles.hpp"

using namespace holo;
namespace fs = std::filesystem;

namespace {

struct Stopwatch {
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  }
};

struct Criterion {
  int id;
  const char* label;
  bool ok = true;
  Stopwatch clock;

  Criterion(int id, const char* label) : id(id), label(label) {}
  void require(bool cond) { ok = ok && cond; }
  void finish(double budget_seconds) {
    double dt = clock.seconds();
    ok = ok && dt < budget_seconds;
    std::printf("ACCEPTANCE %d: %s - %s (%.2f s)\n", id, ok ? "PASS" : "FAIL", label,
                dt);
    std::fflush(stdout);
    CHECK_MESSAGE(ok, label);
  }
};

Matrix random_smooth_hermitian(double t, const std::vector<Matrix>& coeffs) {
  Matrix h = coeffs[0];
  for (size_t m = 1; m < coeffs.size(); m += 2) {
    double w = kTwoPi * static_cast<double>((m + 1) / 2);
    h += std::cos(w * t) * coeffs[m];
    if (m + 1 < coeffs.size()) h += std::sin(w * t) * coeffs[m + 1];
  }
  return h;
}

std::vector<Matrix> random_coeffs(Eigen::Index d, std::mt19937_64& rng, size_t count,
                                  double scale) {
  std::vector<Matrix> out;
  for (size_t k = 0; k < count; ++k)
    out.push_back(oracles::random_hermitian(d, rng, scale));
  return out;
}

}  // namespace

TEST_CASE("criterion 1: closed-form and grid-checked isoholonomic bounds") {
  Criterion c(1, "bound values for diag(e^{i pi/2}, e^{i 3pi/2})");

  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = std::exp(Complex(0, kPi / 2));
  m(1, 1) = std::exp(Complex(0, 3 * kPi / 2));
  GateSpec gate(m);

  const char* bin = std::getenv("HOLO_CLI");
  c.require(bin != nullptr);
  double L = 0.0, Lp = 0.0;
  if (bin) {
    fs::path dir = fs::temp_directory_path() / "holo_acceptance_c1";
    fs::create_directories(dir);
    std::string gate_file = (dir / "gate.json").string();
    std::string out_file = (dir / "report.json").string();
    io::save_file(gate_file, io::gate_to_json(gate));
    std::string cmd = std::string(bin) + " bound " + gate_file + " --out " + out_file +
                      " 2>/dev/null";
    int status = std::system(cmd.c_str());
    c.require(status != -1 && WEXITSTATUS(status) == 0);
    auto report = io::load_file(out_file);
    L = report["L"].get<double>();
    Lp = report["L_projective"].get<double>();
    std::error_code ec;
    fs::remove_all(dir, ec);
  }

  c.require(std::abs(L - kPi * std::sqrt(1.5)) < 1e-9);
  double grid = oracles::grid_projective_bound(gate.eigenphases(), 100000);
  c.require(std::abs(Lp - grid) < 1e-6);
  c.finish(1.0);
}

TEST_CASE("criterion 2: projective bound ordering and phase invariance") {
  Criterion c(2, "L(projective) <= L over 200 gates, phase invariant");
  std::mt19937_64 rng(20260823);
  std::uniform_real_distribution<double> phases(0.0, kTwoPi);
  for (int trial = 0; trial < 200; ++trial) {
    Eigen::Index n = 1 + trial % 4;
    GateSpec g(oracles::haar_unitary(n, rng));
    double conv = isoholonomic_bound(g);
    double proj = projective_isoholonomic_bound(ProjectiveGate(g)).value;
    c.require(proj <= conv + 1e-12);
    for (int p = 0; p < 20; ++p) {
      Complex ph = std::exp(Complex(0, phases(rng)));
      GateSpec rotated((ph * g.matrix()).eval(), 1e-8);
      double moved = projective_isoholonomic_bound(ProjectiveGate(rotated)).value;
      c.require(std::abs(moved - proj) < 1e-9);
    }
  }
  c.finish(10.0);
}

TEST_CASE("criterion 3: tight synthesis end to end") {
  Criterion c(3, "verify_tight clauses on the theta grid and 50 random targets");
  auto check_one = [&](const GateSpec& target, Eigen::Index d) {
    auto p = build_tight(target, NFrame(Matrix::Identity(d, target.size())), 1.0);
    try {
      auto v = verify_tight(p, 4096);
      c.require(v.pass);
      c.require(v.closure_defect < 1e-6);
      c.require(v.holonomy_distance < 1e-6);
      c.require(std::abs(v.length_error) < 1e-3);
      c.require(std::abs(v.qsl.saturation_ratio - 1.0) < 1e-3 || v.qsl.bound < 1e-9);
    } catch (const Error&) {
      c.require(false);
    }
  };

  for (int k = 0; k < 8; ++k) {
    Matrix g(1, 1);
    g(0, 0) = std::exp(Complex(0, kPi / 4 * static_cast<double>(k)));
    check_one(GateSpec(g), 2);
  }
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 50; ++trial)
    check_one(GateSpec(oracles::haar_unitary(2, rng)), 4);
  c.finish(120.0);
}

TEST_CASE("criterion 4: gauge invariance of the projective condition") {
  Criterion c(4, "projective residuals blind to shifts; conventional flips");
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> amp(0.2, 1.0);
  const size_t steps = 1024;
  for (int trial = 0; trial < 50; ++trial) {
    Eigen::Index n = 1 + trial % 2;
    Eigen::Index d = 2 * n;
    GateSpec target(oracles::haar_unitary(n, rng));
    auto p = build_tight(target, NFrame(Matrix::Identity(d, n)), 1.0);

    // Shift function, |eps| well above ten transport tolerances.
    double a0 = amp(rng), a1 = amp(rng);
    std::vector<double> vals;
    for (size_t k = 0; k <= steps; ++k) {
      double t = static_cast<double>(k) / static_cast<double>(steps);
      vals.push_back(a0 + a1 * std::sin(kTwoPi * t));
    }
    ShiftFunction eps{1.0, vals};

    // Conventional verdict flips under the shift.
    auto conv_plain = check_parallel_lab(p.hamiltonian(), p.frame(), 4096);
    c.require(conv_plain.pass);
    std::vector<Matrix> hs;
    for (size_t k = 0; k <= steps; ++k)
      hs.push_back(p.hamiltonian().at(static_cast<double>(k) /
                                      static_cast<double>(steps)));
    auto h_sampled = HamiltonianPath::sampled(hs, 1.0);
    auto shifted = gauge_shift(h_sampled, eps);
    c.require(!check_parallel_lab(shifted, p.frame(), steps).pass);

    // Projective residual traces agree within 1e-9.
    auto before = check_projective_lab(h_sampled, p.frame(), steps);
    auto after = check_projective_lab(shifted, p.frame(), steps);
    c.require(before.pass == after.pass);
    c.require(before.residual_trace.size() == after.residual_trace.size());
    for (size_t k = 0; k < before.residual_trace.size(); ++k)
      c.require(std::abs(before.residual_trace[k] - after.residual_trace[k]) < 1e-9);
  }
  c.finish(30.0);
}

TEST_CASE("criterion 5: frame covariance of the transport condition") {
  Criterion c(5, "rotating vs pulled-back lab residual traces");
  std::mt19937_64 rng(5);
  const size_t steps = 4096;
  for (int trial = 0; trial < 50; ++trial) {
    Eigen::Index d = 2 + trial % 5;  // up to 6
    Eigen::Index n = 1 + trial % 2;
    if (n >= d) n = 1;
    auto coeffs = random_coeffs(d, rng, 3, 0.7);
    std::vector<Matrix> hs;
    for (size_t k = 0; k <= steps; ++k)
      hs.push_back(random_smooth_hermitian(
          static_cast<double>(k) / static_cast<double>(steps), coeffs));
    auto h_rf = HamiltonianPath::sampled(hs, 1.0);
    Matrix b = oracles::random_hermitian(d, rng, 0.8);
    auto rf = RotatingFrame::constant_generator(b, 1.0);
    NFrame v0(oracles::haar_unitary(d, rng).leftCols(n));

    auto rot = check_parallel_rotating(h_rf, rf, v0, steps);
    auto lab = check_parallel_lab(from_rotating_frame(h_rf, rf), v0, steps);
    c.require(rot.residual_trace.size() == lab.residual_trace.size());
    for (size_t k = 0; k < rot.residual_trace.size(); ++k)
      c.require(std::abs(rot.residual_trace[k] - lab.residual_trace[k]) < 3e-4);
  }
  c.finish(60.0);
}

TEST_CASE("criterion 6: geometric-phase oracle on spherical caps") {
  Criterion c(6, "cap-loop holonomy vs Pancharatnam product and cone angles");
  const size_t samples = 10000;
  for (int k = 1; k <= 8; ++k) {
    double alpha = kPi * static_cast<double>(k) / 9.0;
    auto states = oracles::cap_loop_states(alpha, samples);
    auto path = oracles::cap_loop_path(alpha, samples);
    auto lift = horizontal_lift(path, NFrame(states.front()));
    double phase = std::arg(states.front().dot(lift[lift.size() - 1].column(0)));
    double ref = oracles::pancharatnam_phase(states);
    c.require(std::abs(std::remainder(phase - ref, kTwoPi)) < 1e-4);
  }
  for (double theta : {kPi / 4, kPi / 2, kPi, 3 * kPi / 2}) {
    double alpha = std::acos(theta / kPi - 1.0);
    auto states = oracles::cap_loop_states(alpha, samples);
    auto path = oracles::cap_loop_path(alpha, samples);
    auto result = holonomy(path, NFrame(states.front()));
    double phase = principal_phase(result.gate.matrix()(0, 0), 1e-6);
    c.require(std::abs(std::remainder(phase - theta, kTwoPi)) < 1e-4);
  }
  c.finish(30.0);
}

TEST_CASE("criterion 7: isoholonomic inequality on random closed loops") {
  Criterion c(7, "length >= bound in conventional and projective forms");
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 100; ++trial) {
    Eigen::Index n = 1 + trial % 2;
    Eigen::Index d = 2 + n + trial % 2;  // 3..5
    auto scenario = oracles::random_closed_loop(d, n, rng, 1024);
    double length = curve_length(scenario.path);
    try {
      auto result = holonomy(scenario.path, scenario.initial_frame);
      c.require(length >= isoholonomic_bound(result.gate) - 1e-3);
      auto pb = projective_isoholonomic_bound(ProjectiveGate(result.gate));
      c.require(length >= pb.value - 1e-3);
    } catch (const Error&) {
      c.require(false);
    }
  }
  c.finish(120.0);
}

TEST_CASE("criterion 8: skew information vs finite-difference speed") {
  Criterion c(8, "Wigner-Yanase value matches projector-path speed");
  std::mt19937_64 rng(8);
  const double dt = 1e-5;
  for (int trial = 0; trial < 100; ++trial) {
    Eigen::Index d = 2 + trial % 4;
    Eigen::Index n = 1 + trial % (d - 1);
    Matrix h = oracles::random_hermitian(d, rng);
    NFrame v(oracles::haar_unitary(d, rng).leftCols(n));
    Projector p = projector_of(v);
    double info = skew_information(h, p);

    Matrix up = expm_skew(h, dt);
    Matrix um = expm_skew(h, -dt);
    Matrix pdot = (up * p.matrix() * up.adjoint() - um * p.matrix() * um.adjoint()) /
                  (2.0 * dt);
    double speed2 = 0.5 * (pdot * pdot).trace().real();
    c.require(std::abs(info - speed2) <= 1e-6 * std::max(info, 1e-12));
  }
  c.finish(10.0);
}
