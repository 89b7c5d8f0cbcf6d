#pragma once

#include <string>

#include <json.hpp>

#include "endo/actuation.hpp"
#include "endo/spine_model.hpp"

namespace endo {

// A config file holds the SpineParams keys at top level plus an optional
// "actuation" object: {"psi_max_deg": 180, "zero_offsets_deg": [...]}.
struct Config {
    SpineParams spine;
    ActuationConfig actuation;
};

Config config_from_json(const nlohmann::json& j);
Config load_config(const std::string& path);

// Rejects offsets of the wrong count or outside [0, psi_max).
void validate_actuation(const SpineModel& model, const ActuationConfig& actuation);

}  // namespace endo
