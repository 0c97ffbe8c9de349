#pragma once

#include <string>

#include "mqec/protocol.hpp"

namespace mqec {

// JSON serialization of states/operators: amplitudes as [re, im] pairs with
// a space header.  Numbers are kept at full double precision.
std::string state_to_json(const StateVector& psi);
StateVector state_from_json(const std::string& text);

std::string operator_to_json(const LinearOperator& op);
LinearOperator operator_from_json(const std::string& text);

std::string trajectory_to_json(const TrajectoryRecord& rec);
std::string syndrome_to_json(const SyndromeOutcome& outcome);

/// Format a double with 12 significant digits (CSV convention).
std::string csv_number(double value);

/// One CSV line from the given cells (no trailing newline).
std::string csv_row(const std::vector<std::string>& cells);

}  // namespace mqec
