#pragma once

#include <nlohmann/json_fwd.hpp>
#include <string>

#include "holo/protocols.hpp"

namespace holo::io {

using json = nlohmann::json;

// Complex scalars serialize as [re, im]; matrices as arrays of row arrays.
json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const json& j);

json frame_to_json(const NFrame& v);
NFrame frame_from_json(const json& j, double structural_tol = 1e-10);

json projector_path_to_json(const ProjectorPath& p);
ProjectorPath projector_path_from_json(const json& j, double structural_tol = 1e-10);

json hamiltonian_to_json(const HamiltonianPath& h);
HamiltonianPath hamiltonian_from_json(const json& j, double structural_tol = 1e-10);

json rotating_frame_to_json(const RotatingFrame& r);
RotatingFrame rotating_frame_from_json(const json& j, double structural_tol = 1e-10);

json gate_to_json(const GateSpec& g);
GateSpec gate_from_json(const json& j, double structural_tol = 1e-10);

json shift_to_json(const ShiftFunction& s);
ShiftFunction shift_from_json(const json& j);

json protocol_to_json(const TightProtocol& p);
TightProtocol protocol_from_json(const json& j, double structural_tol = 1e-10);

json transport_report_to_json(const TransportReport& r);
json qsl_report_to_json(const QslReport& r);

/// Reads and parses a JSON file; wraps failures in InputError.
json load_file(const std::string& path);
void save_file(const std::string& path, const json& j);

}  // namespace holo::io
