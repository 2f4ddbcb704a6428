#include <CLI11.hpp>
#include <fstream>
#include <future>
#include <iostream>
#include <nlohmann/json.hpp>
#include <optional>
#include <sstream>

#include "holo/json_io.hpp"

namespace {

using holo::io::json;

struct CommonOpts {
  size_t steps = 4096;
  double tol_structural = 1e-10;
  double tol_transport = 1e-8;
  double tol_integration = 1e-4;
  bool projective = false;
  uint64_t seed = 12345;
  std::string out;
  std::string plot;
};

holo::Tolerance tolerances(const CommonOpts& o) {
  return {o.tol_structural, o.tol_transport, o.tol_integration};
}

void emit(const json& report, const CommonOpts& o, const std::string& summary) {
  if (o.out.empty())
    std::cout << report.dump(2) << "\n";
  else
    holo::io::save_file(o.out, report);
  std::cerr << summary << "\n";
}

void write_csv(const std::string& path, const std::vector<std::string>& headers,
               const std::vector<std::vector<double>>& columns) {
  std::ofstream out(path);
  if (!out) throw holo::InputError("cannot write plot file: " + path);
  for (size_t c = 0; c < headers.size(); ++c)
    out << headers[c] << (c + 1 < headers.size() ? ',' : '\n');
  size_t rows = columns.empty() ? 0 : columns.front().size();
  out.precision(17);
  for (size_t r = 0; r < rows; ++r)
    for (size_t c = 0; c < columns.size(); ++c)
      out << columns[c][r] << (c + 1 < columns.size() ? ',' : '\n');
}

int cmd_bound(const std::string& gate_file, const CommonOpts& o) {
  holo::GateSpec gate =
      holo::io::gate_from_json(holo::io::load_file(gate_file), o.tol_structural);
  holo::ProjectiveGate pgate(gate);
  auto pb = holo::projective_isoholonomic_bound(pgate);
  std::vector<double> phases(gate.eigenphases().data(),
                             gate.eigenphases().data() + gate.size());
  json report = {{"eigenphases", phases},
                 {"L", holo::isoholonomic_bound(gate)},
                 {"L_projective", pb.value},
                 {"argmin_shift", pb.argmin_shift}};
  std::ostringstream summary;
  summary << "L = " << report["L"].get<double>()
          << ", L_projective = " << pb.value << " (shift index " << pb.argmin_shift << ")";
  emit(report, o, summary.str());
  return 0;
}

int cmd_lift(const std::string& path_file, const std::string& frame_file,
             const std::string& eps_file, const CommonOpts& o) {
  auto tol = tolerances(o);
  holo::ProjectorPath path =
      holo::io::projector_path_from_json(holo::io::load_file(path_file), o.tol_structural);
  holo::NFrame v0 =
      holo::io::frame_from_json(holo::io::load_file(frame_file), o.tol_structural);
  holo::FramePath lift = [&] {
    if (!eps_file.empty()) {
      auto eps = holo::io::shift_from_json(holo::io::load_file(eps_file));
      return holo::projective_horizontal_lift(path, v0, eps, tol);
    }
    return holo::horizontal_lift(path, v0, tol);
  }();

  auto closure = holo::loop_closure(path, tol.transport);
  holo::Matrix gamma = v0.matrix().adjoint() * lift[lift.size() - 1].matrix();

  // Connection residual of the lifted path: V^dag Vdot by central differences.
  const double dt = lift.dt();
  double conn_residual = 0.0;
  std::vector<double> residuals(lift.size());
  for (size_t k = 0; k < lift.size(); ++k) {
    holo::Matrix vdot;
    if (lift.size() == 2)
      vdot = (lift[1].matrix() - lift[0].matrix()) / dt;
    else if (k == 0)
      vdot = (-3.0 * lift[0].matrix() + 4.0 * lift[1].matrix() - lift[2].matrix()) /
             (2.0 * dt);
    else if (k == lift.size() - 1)
      vdot = (3.0 * lift[k].matrix() - 4.0 * lift[k - 1].matrix() +
              lift[k - 2].matrix()) /
             (2.0 * dt);
    else
      vdot = (lift[k + 1].matrix() - lift[k - 1].matrix()) / (2.0 * dt);
    holo::Matrix conn = lift[k].matrix().adjoint() * vdot;
    if (!eps_file.empty()) {
      // The projective lift carries the central offset i eps; report the
      // deviation from the best central fit.
      holo::Complex mean = conn.trace() / static_cast<double>(conn.rows());
      conn -= mean * holo::Matrix::Identity(conn.rows(), conn.cols());
    }
    residuals[k] = holo::max_abs(conn);
    conn_residual = std::max(conn_residual, residuals[k]);
  }

  json report = {{"holonomy", holo::io::matrix_to_json(gamma)},
                 {"closure_defect", closure.defect},
                 {"open_loop", !closure.closed},
                 {"connection_residual", conn_residual},
                 {"length", holo::curve_length(path)}};
  if (!o.plot.empty()) {
    std::vector<double> ts(lift.size());
    for (size_t k = 0; k < lift.size(); ++k) ts[k] = static_cast<double>(k) * dt;
    write_csv(o.plot, {"t", "connection_residual"}, {ts, residuals});
  }
  std::ostringstream summary;
  summary << "length = " << report["length"].get<double>()
          << ", closure defect = " << closure.defect
          << (closure.closed ? "" : " (warning: open loop)");
  emit(report, o, summary.str());
  return 0;
}

int cmd_check(const std::string& ham_file, const std::string& frame_file,
              const std::string& rf_file, const CommonOpts& o) {
  auto tol = tolerances(o);
  holo::HamiltonianPath h =
      holo::io::hamiltonian_from_json(holo::io::load_file(ham_file), o.tol_structural);
  holo::NFrame v0 =
      holo::io::frame_from_json(holo::io::load_file(frame_file), o.tol_structural);
  holo::TransportReport rep;
  if (rf_file.empty()) {
    rep = o.projective ? holo::check_projective_lab(h, v0, o.steps, tol)
                       : holo::check_parallel_lab(h, v0, o.steps, tol);
  } else {
    auto rf = holo::io::rotating_frame_from_json(holo::io::load_file(rf_file),
                                                 o.tol_structural);
    rep = o.projective ? holo::check_projective_rotating(h, rf, v0, o.steps, tol)
                       : holo::check_parallel_rotating(h, rf, v0, o.steps, tol);
  }
  if (!o.plot.empty()) {
    std::vector<double> ts(rep.residual_trace.size());
    for (size_t k = 0; k < ts.size(); ++k)
      ts[k] = h.tau() * static_cast<double>(k) / static_cast<double>(o.steps);
    std::vector<std::string> headers = {"t", "residual"};
    std::vector<std::vector<double>> cols = {ts, rep.residual_trace};
    if (!rep.epsilon_trace.empty()) {
      headers.push_back("epsilon");
      cols.push_back(rep.epsilon_trace);
    }
    write_csv(o.plot, headers, cols);
  }
  std::ostringstream summary;
  summary << (rep.pass ? "pass" : "fail") << ", max residual = " << rep.max_residual;
  emit(holo::io::transport_report_to_json(rep), o, summary.str());
  return rep.pass ? 0 : 1;
}

int cmd_tight(const std::string& gate_file, Eigen::Index dim, double tau, double epsilon,
              const CommonOpts& o) {
  auto tol = tolerances(o);
  holo::GateSpec gate =
      holo::io::gate_from_json(holo::io::load_file(gate_file), o.tol_structural);
  if (dim < 2 * gate.size())
    throw holo::CodimensionError(
        "tight: ambient dimension must be at least twice the gate size (need >= " +
        std::to_string(2 * gate.size()) + ")");
  // Deterministic computational frame: the first n standard basis vectors.
  holo::Matrix v = holo::Matrix::Identity(dim, gate.size());
  holo::TightProtocol protocol =
      holo::build_tight(gate, holo::NFrame(std::move(v)), tau, epsilon, tol);
  if (o.out.empty())
    throw holo::InputError("tight: --out is required (protocol file destination)");
  holo::io::save_file(o.out, holo::io::protocol_to_json(protocol));
  holo::TightVerification ver = holo::verify_tight(protocol, o.steps, tol);
  json report = {{"protocol_file", o.out},
                 {"closure_defect", ver.closure_defect},
                 {"holonomy_distance", ver.holonomy_distance},
                 {"length_error", ver.length_error},
                 {"qsl", holo::io::qsl_report_to_json(ver.qsl)},
                 {"verdict", "pass"}};
  std::cout << report.dump(2) << "\n";
  std::ostringstream summary;
  summary << "tight protocol verified: length = " << ver.qsl.length
          << ", saturation ratio = " << ver.qsl.saturation_ratio;
  std::cerr << summary.str() << "\n";
  return 0;
}

int cmd_verify(const std::string& ham_file, const std::string& frame_file,
               const std::string& gate_file, const CommonOpts& o) {
  auto tol = tolerances(o);
  holo::HamiltonianPath h =
      holo::io::hamiltonian_from_json(holo::io::load_file(ham_file), o.tol_structural);
  holo::NFrame v0 =
      holo::io::frame_from_json(holo::io::load_file(frame_file), o.tol_structural);
  holo::GateSpec target = [&] {
    if (!gate_file.empty())
      return holo::io::gate_from_json(holo::io::load_file(gate_file), o.tol_structural);
    // Saturation-diagnosis mode: the measured holonomy is its own target.
    auto path = holo::driven_projector_path(h, v0, o.steps, tol);
    return holo::holonomy(path, v0, tol).gate;
  }();
  holo::GateTarget tgt =
      o.projective ? holo::GateTarget(holo::ProjectiveGate(target)) : holo::GateTarget(target);
  holo::QslReport rep = holo::qsl_report(h, v0, tgt, o.steps, tol);
  std::ostringstream summary;
  summary << "tau_qsl = " << rep.tau_qsl << ", saturation ratio = " << rep.saturation_ratio;
  emit(holo::io::qsl_report_to_json(rep), o, summary.str());
  return 0;
}

int run_cli(int argc, char** argv);

int run_scenario_file(const std::string& path) {
  json j = holo::io::load_file(path);
  std::vector<std::string> args = {"holo"};
  if (!j.contains("kind") || !j["kind"].is_string())
    throw holo::InputError("scenario file: missing \"kind\"");
  args.push_back(j["kind"].get<std::string>());
  for (const auto& a : j.value("args", json::array()))
    args.push_back(a.get<std::string>());
  std::vector<char*> argv;
  argv.reserve(args.size());
  for (auto& s : args) argv.push_back(s.data());
  return run_cli(static_cast<int>(argv.size()), argv.data());
}

int run_cli(int argc, char** argv) {
  CLI::App app{"Holonomic gate toolkit: transport checks, bounds, and tight protocols"};
  app.require_subcommand(0, 1);

  CommonOpts opts;
  std::vector<std::string> batch_files;
  app.add_option("--batch", batch_files, "scenario JSON files to run concurrently");

  auto add_common = [&opts](CLI::App* sub) {
    sub->add_option("--steps", opts.steps, "propagation steps")->capture_default_str();
    sub->add_option("--tol-structural", opts.tol_structural, "structural tolerance");
    sub->add_option("--tol-transport", opts.tol_transport, "transport tolerance");
    sub->add_option("--tol-integration", opts.tol_integration, "integration tolerance");
    sub->add_flag("--projective", opts.projective, "use the projective condition/bound");
    sub->add_option("--seed", opts.seed, "random seed (reports are deterministic)");
    sub->add_option("--out", opts.out, "write the JSON report to this path");
    sub->add_option("--plot", opts.plot, "write CSV traces to this path");
  };

  std::string gate_file, ham_file, frame_file, rf_file, path_file, eps_file, out_path;
  Eigen::Index dim = 0;
  double tau = 1.0, epsilon = 0.0;

  auto* bound = app.add_subcommand("bound", "isoholonomic bounds of a gate");
  bound->add_option("gate", gate_file, "gate JSON file")->required();
  add_common(bound);

  auto* lift = app.add_subcommand("lift", "horizontal lift of a projector path");
  lift->add_option("path", path_file, "projector path JSON file")->required();
  lift->add_option("frame", frame_file, "initial frame JSON file")->required();
  lift->add_option("--eps", eps_file, "shift function JSON file (projective lift)");
  add_common(lift);

  auto* check = app.add_subcommand("check", "parallel transport condition check");
  check->add_option("hamiltonian", ham_file, "Hamiltonian JSON file")->required();
  check->add_option("frame", frame_file, "computational frame JSON file")->required();
  check->add_option("--rotating-frame", rf_file, "rotating frame JSON file");
  add_common(check);

  auto* tight = app.add_subcommand("tight", "synthesize and verify a tight protocol");
  tight->add_option("gate", gate_file, "target gate JSON file")->required();
  tight->add_option("--dim", dim, "ambient dimension")->required();
  tight->add_option("--tau", tau, "protocol duration")->capture_default_str();
  tight->add_option("--epsilon", epsilon, "common projective offset")
      ->capture_default_str();
  add_common(tight);

  auto* verify = app.add_subcommand("verify", "quantum-speed-limit report");
  verify->add_option("hamiltonian", ham_file, "Hamiltonian JSON file")->required();
  verify->add_option("frame", frame_file, "computational frame JSON file")->required();
  verify->add_option("--gate", gate_file, "target gate JSON file");
  add_common(verify);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (!batch_files.empty()) {
      std::vector<std::future<int>> results;
      results.reserve(batch_files.size());
      for (const auto& f : batch_files)
        results.push_back(std::async(std::launch::async, run_scenario_file, f));
      int worst = 0;
      for (auto& r : results) worst = std::max(worst, r.get());
      return worst;
    }
    if (bound->parsed()) return cmd_bound(gate_file, opts);
    if (lift->parsed()) return cmd_lift(path_file, frame_file, eps_file, opts);
    if (check->parsed()) return cmd_check(ham_file, frame_file, rf_file, opts);
    if (tight->parsed()) return cmd_tight(gate_file, dim, tau, epsilon, opts);
    if (verify->parsed()) return cmd_verify(ham_file, frame_file, gate_file, opts);
    std::cerr << app.help() << "\n";
    return 2;
  } catch (const holo::VerificationError& e) {
    std::cerr << "verification failed: " << e.what() << "\n";
    return 1;
  } catch (const holo::DegeneracyError& e) {
    std::cerr << "numerical degeneracy: " << e.what() << "\n";
    return 3;
  } catch (const holo::OpenLoopError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const holo::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace

int main(int argc, char** argv) { return run_cli(argc, argv); }
