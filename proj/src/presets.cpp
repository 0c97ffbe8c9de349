#include "mqec/presets.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "json.hpp"

#ifndef MQEC_SOURCE_PRESET_DIR
#define MQEC_SOURCE_PRESET_DIR ""
#endif

namespace mqec {

PhysicalPreset preset_from_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  const double two_pi = 2.0 * kPi;
  PhysicalPreset p;
  p.name = j.at("name").get<std::string>();
  p.nu = two_pi * j.at("nu_over_2pi_hz").get<double>();
  p.eta = j.at("eta").get<double>();
  p.g1 = two_pi * j.at("g1_over_2pi_hz").get<double>();
  p.kappa = two_pi * j.at("kappa_over_2pi_hz").get<double>();
  p.g_L = two_pi * j.at("g_L_over_2pi_hz").get<double>();
  p.g_C = two_pi * j.at("g_C_over_2pi_hz").get<double>();
  p.delta = two_pi * j.at("delta_over_2pi_hz").get<double>();
  p.g_tilde = two_pi * j.at("g_tilde_over_2pi_hz").get<double>();
  p.detector_efficiency = j.value("detector_efficiency", 1.0);
  return p;
}

PhysicalPreset load_preset(const std::string& name_or_path) {
  std::vector<std::string> candidates;
  if (name_or_path.size() > 5 &&
      name_or_path.substr(name_or_path.size() - 5) == ".json") {
    candidates.push_back(name_or_path);
  } else {
    if (const char* dir = std::getenv("MQEC_PRESET_DIR"))
      candidates.push_back(std::string(dir) + "/" + name_or_path + ".json");
    const std::string source_dir = MQEC_SOURCE_PRESET_DIR;
    if (!source_dir.empty())
      candidates.push_back(source_dir + "/" + name_or_path + ".json");
  }
  for (const auto& path : candidates) {
    std::ifstream in(path);
    if (!in) continue;
    std::ostringstream buf;
    buf << in.rdbuf();
    return preset_from_json(buf.str());
  }
  throw std::invalid_argument("preset not found: " + name_or_path);
}

}  // namespace mqec
