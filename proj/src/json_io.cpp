#include "holo/json_io.hpp"

#include <fstream>
#include <nlohmann/json.hpp>

namespace holo::io {

namespace {

json complex_to_json(const Complex& z) { return json::array({z.real(), z.imag()}); }

Complex complex_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw InputError("expected complex scalar as [re, im]");
  return {j[0].get<double>(), j[1].get<double>()};
}

double number_field(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number())
    throw InputError(std::string("missing or non-numeric field \"") + key + "\"");
  return j[key].get<double>();
}

const json& field(const json& j, const char* key) {
  if (!j.contains(key))
    throw InputError(std::string("missing field \"") + key + "\"");
  return j[key];
}

std::vector<Matrix> matrices_from_json(const json& j) {
  if (!j.is_array()) throw InputError("expected an array of matrices");
  std::vector<Matrix> out;
  out.reserve(j.size());
  for (const auto& m : j) out.push_back(matrix_from_json(m));
  return out;
}

json matrices_to_json(const std::vector<Matrix>& ms) {
  json out = json::array();
  for (const auto& m : ms) out.push_back(matrix_to_json(m));
  return out;
}

}  // namespace

json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(complex_to_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const json& j) {
  if (!j.is_array() || j.empty() || !j[0].is_array() || j[0].empty())
    throw InputError("expected a matrix as an array of row arrays");
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = static_cast<Eigen::Index>(j[0].size());
  Matrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const auto& row = j[static_cast<size_t>(r)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols)
      throw InputError("ragged matrix rows");
    for (Eigen::Index c = 0; c < cols; ++c)
      m(r, c) = complex_from_json(row[static_cast<size_t>(c)]);
  }
  return m;
}

json frame_to_json(const NFrame& v) {
  return {{"dim", v.dim()}, {"n", v.size()}, {"columns", matrix_to_json(v.matrix())}};
}

NFrame frame_from_json(const json& j, double structural_tol) {
  Matrix m = matrix_from_json(field(j, "columns"));
  if (m.rows() != static_cast<Eigen::Index>(number_field(j, "dim")) ||
      m.cols() != static_cast<Eigen::Index>(number_field(j, "n")))
    throw InputError("frame file: declared shape does not match the matrix");
  try {
    return NFrame(std::move(m), structural_tol);
  } catch (const StructuralError& e) {
    throw InputError(std::string("frame file: ") + e.what());
  }
}

json projector_path_to_json(const ProjectorPath& p) {
  json samples = json::array();
  for (const auto& s : p.samples()) samples.push_back(matrix_to_json(s.matrix()));
  return {{"dim", p.dim()}, {"rank", p.rank()}, {"tau", p.tau()}, {"samples", samples}};
}

ProjectorPath projector_path_from_json(const json& j, double structural_tol) {
  double tau = number_field(j, "tau");
  auto mats = matrices_from_json(field(j, "samples"));
  std::vector<Projector> samples;
  samples.reserve(mats.size());
  try {
    for (auto& m : mats) samples.emplace_back(std::move(m), structural_tol);
    ProjectorPath path(tau, std::move(samples));
    if (path.dim() != static_cast<Eigen::Index>(number_field(j, "dim")) ||
        path.rank() != static_cast<Eigen::Index>(number_field(j, "rank")))
      throw InputError("projector path file: declared shape mismatch");
    return path;
  } catch (const Error& e) {
    throw InputError(std::string("projector path file: ") + e.what());
  }
}

json hamiltonian_to_json(const HamiltonianPath& h) {
  json j = {{"dim", h.dim()}, {"tau", h.tau()}};
  switch (h.kind()) {
    case HamiltonianPath::Kind::Constant:
      j["kind"] = "constant";
      j["H"] = matrix_to_json(h.base());
      break;
    case HamiltonianPath::Kind::RotatedConstant:
      j["kind"] = "rotated_constant";
      j["H0"] = matrix_to_json(h.base());
      j["B"] = matrix_to_json(h.generator());
      break;
    case HamiltonianPath::Kind::Sampled:
      j["kind"] = "sampled";
      j["samples"] = matrices_to_json(h.samples());
      break;
  }
  return j;
}

HamiltonianPath hamiltonian_from_json(const json& j, double structural_tol) {
  double tau = number_field(j, "tau");
  std::string kind = field(j, "kind").get<std::string>();
  try {
    if (kind == "constant")
      return HamiltonianPath::constant(matrix_from_json(field(j, "H")), tau, structural_tol);
    if (kind == "rotated_constant")
      return HamiltonianPath::rotated_constant(matrix_from_json(field(j, "H0")),
                                               matrix_from_json(field(j, "B")), tau,
                                               structural_tol);
    if (kind == "sampled")
      return HamiltonianPath::sampled(matrices_from_json(field(j, "samples")), tau,
                                      structural_tol);
  } catch (const Error& e) {
    throw InputError(std::string("hamiltonian file: ") + e.what());
  }
  throw InputError("hamiltonian file: unknown kind \"" + kind + "\"");
}

json rotating_frame_to_json(const RotatingFrame& r) {
  json j = {{"dim", r.dim()}, {"tau", r.tau()}};
  if (r.kind() == RotatingFrame::Kind::ConstantGenerator) {
    j["kind"] = "constant_generator";
    j["generator"] = matrix_to_json(r.generator());
  } else {
    j["kind"] = "sampled";
    j["samples"] = matrices_to_json(r.samples());
  }
  return j;
}

RotatingFrame rotating_frame_from_json(const json& j, double structural_tol) {
  double tau = number_field(j, "tau");
  std::string kind = field(j, "kind").get<std::string>();
  try {
    if (kind == "constant_generator")
      return RotatingFrame::constant_generator(matrix_from_json(field(j, "generator")),
                                               tau, structural_tol);
    if (kind == "sampled")
      return RotatingFrame::sampled(matrices_from_json(field(j, "samples")), tau,
                                    structural_tol);
  } catch (const Error& e) {
    throw InputError(std::string("rotating frame file: ") + e.what());
  }
  throw InputError("rotating frame file: unknown kind \"" + kind + "\"");
}

json gate_to_json(const GateSpec& g) {
  return {{"n", g.size()}, {"matrix", matrix_to_json(g.matrix())}};
}

GateSpec gate_from_json(const json& j, double structural_tol) {
  Matrix m = matrix_from_json(field(j, "matrix"));
  if (m.rows() != static_cast<Eigen::Index>(number_field(j, "n")))
    throw InputError("gate file: declared size does not match the matrix");
  try {
    return GateSpec(std::move(m), structural_tol);
  } catch (const StructuralError& e) {
    throw InputError(std::string("gate file: ") + e.what());
  }
}

json shift_to_json(const ShiftFunction& s) {
  return {{"tau", s.tau}, {"values", s.values}};
}

ShiftFunction shift_from_json(const json& j) {
  ShiftFunction s;
  s.tau = number_field(j, "tau");
  const json& vals = field(j, "values");
  if (!vals.is_array() || vals.size() < 2)
    throw InputError("shift file: need >= 2 values");
  for (const auto& v : vals) {
    if (!v.is_number()) throw InputError("shift file: non-numeric value");
    s.values.push_back(v.get<double>());
  }
  return s;
}

json protocol_to_json(const TightProtocol& p) {
  json blocks = json::array();
  for (const auto& b : p.blocks()) {
    blocks.push_back({{"theta", b.theta},
                      {"alpha", b.alpha},
                      {"v", matrix_to_json(b.code_vector)},
                      {"w", matrix_to_json(b.ancilla_vector)},
                      {"B", matrix_to_json(b.rabi_generator)},
                      {"H_rf", matrix_to_json(b.rf_hamiltonian)}});
  }
  return {{"dim", p.dim()},
          {"tau", p.tau()},
          {"epsilon", p.epsilon()},
          {"frame", frame_to_json(p.frame())},
          {"blocks", blocks}};
}

TightProtocol protocol_from_json(const json& j, double structural_tol) {
  try {
    NFrame frame = frame_from_json(field(j, "frame"), structural_tol);
    double tau = number_field(j, "tau");
    double eps = number_field(j, "epsilon");
    std::vector<TightBlock> blocks;
    for (const auto& b : field(j, "blocks")) {
      TightBlock blk;
      blk.theta = number_field(b, "theta");
      blk.alpha = number_field(b, "alpha");
      blk.code_vector = matrix_from_json(field(b, "v")).col(0);
      blk.ancilla_vector = matrix_from_json(field(b, "w")).col(0);
      blk.rabi_generator = matrix_from_json(field(b, "B"));
      blk.rf_hamiltonian = matrix_from_json(field(b, "H_rf"));
      blocks.push_back(std::move(blk));
    }
    return TightProtocol(std::move(frame), tau, eps, std::move(blocks));
  } catch (const InputError&) {
    throw;
  } catch (const Error& e) {
    throw InputError(std::string("protocol file: ") + e.what());
  }
}

json transport_report_to_json(const TransportReport& r) {
  return {{"max_residual", r.max_residual},
          {"verdict", r.pass ? "pass" : "fail"},
          {"residuals", r.residual_trace},
          {"epsilon", r.epsilon_trace}};
}

json qsl_report_to_json(const QslReport& r) {
  return {{"length", r.length},
          {"bound", r.bound},
          {"bound_kind", r.bound_kind},
          {"mean_speed", r.mean_speed},
          {"tau", r.tau},
          {"tau_qsl", r.tau_qsl},
          {"saturation_ratio", r.saturation_ratio}};
}

json load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open file: " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputError("cannot parse " + path + ": " + e.what());
  }
}

void save_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write file: " + path);
  out << j.dump(2) << "\n";
}

}  // namespace holo::io
