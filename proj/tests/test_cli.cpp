#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>

#include "holo/json_io.hpp"
#include "oracles.hpp"

using namespace holo;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

const char* cli() {
  const char* p = std::getenv("HOLO_CLI");
  REQUIRE_MESSAGE(p != nullptr, "HOLO_CLI must point at the CLI binary");
  return p;
}

struct Workdir {
  fs::path dir;
  Workdir() {
    dir = fs::temp_directory_path() /
          ("holo_cli_test_" + std::to_string(::getpid()) + "_" +
           std::to_string(counter()++));
    fs::create_directories(dir);
  }
  ~Workdir() {
    std::error_code ec;
    fs::remove_all(dir, ec);
  }
  static int& counter() {
    static int c = 0;
    return c;
  }
  std::string file(const std::string& name) const { return (dir / name).string(); }
  std::string write(const std::string& name, const json& j) const {
    std::string path = file(name);
    io::save_file(path, j);
    return path;
  }
};

int run(const std::string& args) {
  std::string cmd = std::string(cli()) + " " + args + " 2>/dev/null";
  int status = std::system(cmd.c_str());
  REQUIRE(status != -1);
  return WEXITSTATUS(status);
}

json read_json(const std::string& path) { return io::load_file(path); }

json gate_json(const Matrix& m) { return io::gate_to_json(GateSpec(m, 1e-8)); }

}  // namespace

TEST_CASE("cli bound: identity gate has zero bounds") {
  Workdir w;
  auto gate = w.write("gate.json", gate_json(Matrix::Identity(2, 2)));
  auto out = w.file("report.json");
  CHECK(run("bound " + gate + " --out " + out) == 0);
  json r = read_json(out);
  CHECK(r["L"].get<double>() == 0.0);
  CHECK(r["L_projective"].get<double>() == 0.0);
}

TEST_CASE("cli bound: diag(1, -1) and a two-phase gate") {
  Workdir w;
  Matrix sz = Matrix::Identity(2, 2);
  sz(1, 1) = -1;
  auto g1 = w.write("g1.json", gate_json(sz));
  auto out1 = w.file("r1.json");
  CHECK(run("bound " + g1 + " --out " + out1) == 0);
  json r1 = read_json(out1);
  CHECK(r1["L"].get<double>() == doctest::Approx(kPi).epsilon(1e-12));
  CHECK(r1["L_projective"].get<double>() == doctest::Approx(kPi).epsilon(1e-12));

  Matrix d = Matrix::Zero(2, 2);
  d(0, 0) = std::exp(Complex(0, kPi / 2));
  d(1, 1) = std::exp(Complex(0, 3 * kPi / 2));
  auto g2 = w.write("g2.json", gate_json(d));
  auto out2 = w.file("r2.json");
  CHECK(run("bound " + g2 + " --out " + out2) == 0);
  json r2 = read_json(out2);
  CHECK(r2["L"].get<double>() == doctest::Approx(kPi * std::sqrt(1.5)).epsilon(1e-12));
  CHECK(r2["L_projective"].get<double>() == doctest::Approx(kPi).epsilon(1e-10));
  CHECK(r2["eigenphases"].size() == 2);
}

TEST_CASE("cli bound: malformed gate file exits with input error") {
  Workdir w;
  auto path = w.file("bad.json");
  std::ofstream(path) << "{ not json";
  CHECK(run("bound " + path) == 2);
  CHECK(run("bound " + w.file("missing.json")) == 2);
}

TEST_CASE("cli lift: constant path has identity holonomy") {
  Workdir w;
  std::mt19937_64 rng(601);
  NFrame v0(oracles::haar_unitary(3, rng).leftCols(1));
  std::vector<Projector> ps(9, projector_of(v0));
  auto path = w.write("path.json", io::projector_path_to_json(ProjectorPath(1.0, ps)));
  auto frame = w.write("frame.json", io::frame_to_json(v0));
  auto out = w.file("report.json");
  CHECK(run("lift " + path + " " + frame + " --out " + out) == 0);
  json r = read_json(out);
  CHECK(r["length"].get<double>() < 1e-12);
  CHECK(r["closure_defect"].get<double>() == 0.0);
  CHECK(r["open_loop"].get<bool>() == false);
  Matrix gamma = io::matrix_from_json(r["holonomy"]);
  CHECK(max_abs(gamma - Matrix::Identity(1, 1)) < 1e-12);
}

TEST_CASE("cli lift: cap loop phase and projective shift") {
  Workdir w;
  double alpha = 1.1;
  auto cap = oracles::cap_loop_path(alpha, 4096);
  auto states = oracles::cap_loop_states(alpha, 4096);
  auto path = w.write("path.json", io::projector_path_to_json(cap));
  auto frame = w.write("frame.json", io::frame_to_json(NFrame(states.front())));
  auto out = w.file("plain.json");
  CHECK(run("lift " + path + " " + frame + " --out " + out) == 0);
  json r = read_json(out);
  Matrix gamma = io::matrix_from_json(r["holonomy"]);
  double phase = std::arg(gamma(0, 0));
  double expected = -kPi * (1.0 - std::cos(alpha));
  CHECK(std::abs(std::remainder(phase - expected, kTwoPi)) < 1e-4);

  double eps_val = 0.5;
  auto eps = w.write("eps.json",
                     io::shift_to_json(ShiftFunction::constant(eps_val, cap.tau())));
  auto out2 = w.file("shifted.json");
  CHECK(run("lift " + path + " " + frame + " --eps " + eps + " --out " + out2) == 0);
  Matrix gamma2 = io::matrix_from_json(read_json(out2)["holonomy"]);
  // The shift multiplies the holonomy by e^{i eps tau}.
  Complex ratio = gamma2(0, 0) / gamma(0, 0);
  CHECK(std::abs(ratio - std::exp(Complex(0, eps_val * cap.tau()))) < 1e-9);
}

TEST_CASE("cli check: zero Hamiltonian passes, identity shift discriminates") {
  Workdir w;
  Vector e0 = Vector::Zero(2);
  e0(0) = 1;
  auto frame = w.write("frame.json", io::frame_to_json(NFrame(e0)));
  auto zero = w.write("zero.json", io::hamiltonian_to_json(
                                       HamiltonianPath::constant(Matrix::Zero(2, 2), 1.0)));
  CHECK(run("check " + zero + " " + frame + " --steps 64") == 0);

  auto shifted = w.write(
      "shifted.json",
      io::hamiltonian_to_json(
          HamiltonianPath::constant((0.7 * Matrix::Identity(2, 2)).eval(), 1.0)));
  CHECK(run("check " + shifted + " " + frame + " --steps 64") == 1);
  CHECK(run("check " + shifted + " " + frame + " --steps 64 --projective") == 0);
}

TEST_CASE("cli check: rotating-frame variant and plot output") {
  Workdir w;
  std::mt19937_64 rng(607);
  Matrix b = oracles::random_hermitian(2, rng);
  auto h_rf = w.write("h_rf.json",
                      io::hamiltonian_to_json(HamiltonianPath::constant((-b).eval(), 1.0)));
  auto rf = w.write("rf.json",
                    io::rotating_frame_to_json(RotatingFrame::constant_generator(b, 1.0)));
  Vector e0 = Vector::Zero(2);
  e0(0) = 1;
  auto frame = w.write("frame.json", io::frame_to_json(NFrame(e0)));
  auto plot = w.file("trace.csv");
  CHECK(run("check " + h_rf + " " + frame + " --rotating-frame " + rf +
            " --steps 64 --plot " + plot) == 0);
  std::ifstream in(plot);
  std::string header;
  std::getline(in, header);
  CHECK(header == "t,residual");
}

TEST_CASE("cli tight: synthesizes, verifies, and the export re-checks") {
  Workdir w;
  Matrix g(1, 1);
  g(0, 0) = -1.0;  // theta = pi
  auto gate = w.write("gate.json", gate_json(g));
  auto proto = w.file("protocol.json");
  auto report = w.file("tight_report.json");
  std::string cmd = "tight " + gate + " --dim 2 --tau 1 --out " + proto + " > " + report;
  int status = std::system((std::string(cli()) + " " + cmd + " 2>/dev/null").c_str());
  CHECK(WEXITSTATUS(status) == 0);
  json r = read_json(report);
  CHECK(r["verdict"] == "pass");
  CHECK(r["qsl"]["length"].get<double>() == doctest::Approx(kPi).epsilon(1e-3));
  CHECK(r["qsl"]["saturation_ratio"].get<double>() == doctest::Approx(1.0).epsilon(1e-3));

  // Round trip: export the assembled Hamiltonian and re-check it.
  auto protocol = io::protocol_from_json(read_json(proto));
  auto ham = w.write("assembled.json", io::hamiltonian_to_json(protocol.hamiltonian()));
  auto frame = w.write("frame.json", io::frame_to_json(protocol.frame()));
  CHECK(run("check " + ham + " " + frame + " --steps 4096") == 0);
}

TEST_CASE("cli tight: identity target and codimension failure") {
  Workdir w;
  auto gate = w.write("gate.json", gate_json(Matrix::Identity(2, 2)));
  auto proto = w.file("protocol.json");
  CHECK(run("tight " + gate + " --dim 4 --steps 256 --out " + proto) == 0);
  CHECK(run("tight " + gate + " --dim 3 --steps 256 --out " + proto) == 2);
}

TEST_CASE("cli verify: tight protocol saturates; zero Hamiltonian degenerates") {
  Workdir w;
  std::mt19937_64 rng(613);
  Matrix g = oracles::haar_unitary(1, rng);
  auto p = build_tight(GateSpec(g), NFrame(Matrix::Identity(2, 1)), 1.0);
  auto ham = w.write("ham.json", io::hamiltonian_to_json(p.hamiltonian()));
  auto frame = w.write("frame.json", io::frame_to_json(p.frame()));
  auto gate = w.write("gate.json", gate_json(g));
  auto out = w.file("qsl.json");
  CHECK(run("verify " + ham + " " + frame + " --gate " + gate + " --steps 2048 --out " +
            out) == 0);
  json r = read_json(out);
  CHECK(r["saturation_ratio"].get<double>() == doctest::Approx(1.0).epsilon(1e-3));
  CHECK(r["bound_kind"] == "conventional");

  // Without --gate the measured holonomy is its own target.
  auto out2 = w.file("qsl2.json");
  CHECK(run("verify " + ham + " " + frame + " --steps 2048 --out " + out2) == 0);
  CHECK(read_json(out2)["saturation_ratio"].get<double>() ==
        doctest::Approx(1.0).epsilon(1e-3));

  auto zero = w.write("zero.json", io::hamiltonian_to_json(
                                       HamiltonianPath::constant(Matrix::Zero(2, 2), 1.0)));
  CHECK(run("verify " + zero + " " + frame + " --gate " + gate + " --steps 64") == 3);
}

TEST_CASE("cli: deterministic byte-identical reports") {
  Workdir w;
  std::mt19937_64 rng(617);
  auto gate = w.write("gate.json", gate_json(oracles::haar_unitary(3, rng)));
  auto o1 = w.file("a.json");
  auto o2 = w.file("b.json");
  CHECK(run("bound " + gate + " --out " + o1) == 0);
  CHECK(run("bound " + gate + " --out " + o2) == 0);
  std::ifstream f1(o1), f2(o2);
  std::string s1((std::istreambuf_iterator<char>(f1)), {});
  std::string s2((std::istreambuf_iterator<char>(f2)), {});
  CHECK(s1 == s2);
  CHECK_FALSE(s1.empty());
}

TEST_CASE("cli batch: runs scenarios concurrently and reports the worst exit") {
  Workdir w;
  auto gate = w.write("gate.json", gate_json(Matrix::Identity(2, 2)));
  auto out1 = w.file("bound.json");
  json s1 = {{"kind", "bound"}, {"args", {gate, "--out", out1}}};
  auto sc1 = w.write("s1.json", s1);

  Vector e0 = Vector::Zero(2);
  e0(0) = 1;
  auto frame = w.write("frame.json", io::frame_to_json(NFrame(e0)));
  auto shifted = w.write(
      "shifted.json",
      io::hamiltonian_to_json(
          HamiltonianPath::constant((0.7 * Matrix::Identity(2, 2)).eval(), 1.0)));
  json s2 = {{"kind", "check"}, {"args", {shifted, frame, "--steps", "64"}}};
  auto sc2 = w.write("s2.json", s2);

  CHECK(run("--batch " + sc1) == 0);
  CHECK(run("--batch " + sc1 + " --batch " + sc2) == 1);
  CHECK(read_json(out1)["L"].get<double>() == 0.0);
}

TEST_CASE("cli: no subcommand prints help and exits with input error") {
  CHECK(run("") == 2);
}
