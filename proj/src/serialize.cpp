#include "mqec/serialize.hpp"

#include <sstream>

#include "json.hpp"

namespace mqec {

namespace {

using nlohmann::json;

json space_to_json(const SpaceSpec& space) {
  json j;
  j["mode_cutoffs"] = space.mode_cutoffs;
  j["electronic_levels"] = space.electronic_levels;
  if (space.has_cavity()) j["cavity_cutoff"] = *space.cavity_cutoff;
  return j;
}

SpaceSpec space_from_json(const json& j) {
  SpaceSpec space;
  space.mode_cutoffs = j.at("mode_cutoffs").get<std::vector<int>>();
  space.electronic_levels = j.at("electronic_levels").get<int>();
  if (j.contains("cavity_cutoff"))
    space.cavity_cutoff = j.at("cavity_cutoff").get<int>();
  space.validate();
  return space;
}

json complex_array(const Vec& v) {
  json arr = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i)
    arr.push_back({v[i].real(), v[i].imag()});
  return arr;
}

Vec complex_array_from(const json& arr) {
  Vec v(arr.size());
  for (size_t i = 0; i < arr.size(); ++i)
    v[Eigen::Index(i)] = cplx(arr[i][0].get<double>(),
                              arr[i][1].get<double>());
  return v;
}

}  // namespace

std::string state_to_json(const StateVector& psi) {
  json j;
  j["space"] = space_to_json(psi.space);
  j["amplitudes"] = complex_array(psi.amps);
  return j.dump();
}

StateVector state_from_json(const std::string& text) {
  const json j = json::parse(text);
  StateVector psi{space_from_json(j.at("space")),
                  complex_array_from(j.at("amplitudes"))};
  if (psi.amps.size() != psi.space.dim())
    throw std::invalid_argument("amplitude count does not match the space");
  return psi;
}

std::string operator_to_json(const LinearOperator& op) {
  json j;
  j["space"] = space_to_json(op.space);
  j["hermitian"] = op.hermitian;
  json rows = json::array();
  for (Eigen::Index r = 0; r < op.mat.rows(); ++r)
    rows.push_back(complex_array(op.mat.row(r).transpose()));
  j["entries"] = std::move(rows);
  return j.dump();
}

LinearOperator operator_from_json(const std::string& text) {
  const json j = json::parse(text);
  LinearOperator op;
  op.space = space_from_json(j.at("space"));
  op.hermitian = j.value("hermitian", false);
  const auto& rows = j.at("entries");
  const int d = op.space.dim();
  if (int(rows.size()) != d)
    throw std::invalid_argument("row count does not match the space");
  op.mat.resize(d, d);
  for (int r = 0; r < d; ++r)
    op.mat.row(r) = complex_array_from(rows[r]).transpose();
  return op;
}

std::string trajectory_to_json(const TrajectoryRecord& rec) {
  json j;
  j["seed"] = rec.seed;
  json events = json::array();
  for (const auto& [t, channel] : rec.jump_events)
    events.push_back({{"time", t}, {"channel", channel}});
  j["jump_events"] = std::move(events);
  j["norm_history"] = rec.norm_history;
  j["final_state"] = json::parse(state_to_json(rec.final_state));
  return j.dump();
}

std::string syndrome_to_json(const SyndromeOutcome& outcome) {
  json j;
  j["x_jump"] = outcome.x_jump;
  j["y_jump"] = outcome.y_jump;
  j["frame_flipped"] = outcome.frame_flipped;
  json records = json::array();
  for (const auto& [stage, detected] : outcome.photon_records)
    records.push_back({{"stage", stage}, {"detected", detected}});
  j["photon_records"] = std::move(records);
  j["post_state"] = json::parse(state_to_json(outcome.post_state));
  return j.dump();
}

std::string csv_number(double value) {
  std::ostringstream out;
  out.precision(12);
  out << value;
  return out.str();
}

std::string csv_row(const std::vector<std::string>& cells) {
  std::string row;
  for (size_t i = 0; i < cells.size(); ++i) {
    if (i) row += ',';
    row += cells[i];
  }
  return row;
}

}  // namespace mqec
