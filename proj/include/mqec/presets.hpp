#pragma once

#include "mqec/raman.hpp"

namespace mqec {

/// Load a named preset (e.g. "be_plus") from the preset directory, or any
/// path ending in .json directly.  The directory is resolved from the
/// MQEC_PRESET_DIR environment variable, then the source-tree default.
PhysicalPreset load_preset(const std::string& name_or_path);

/// Parse a preset from JSON text; frequencies are quoted as X/2pi in Hz.
PhysicalPreset preset_from_json(const std::string& text);

}  // namespace mqec
