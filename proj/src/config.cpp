#include "endo/config.hpp"

#include <fstream>
#include <numbers>

#include "endo/errors.hpp"

namespace endo {

namespace {

constexpr double kDegToRad = std::numbers::pi / 180.0;

ActuationConfig actuation_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw ValidationError("actuation config must be a JSON object");
    ActuationConfig a;
    try {
        for (const auto& [key, value] : j.items()) {
            if (key == "psi_max_deg") {
                a.psi_max = value.get<double>() * kDegToRad;
            } else if (key == "zero_offsets_deg") {
                for (double deg : value.get<std::vector<double>>()) a.zero_offsets.push_back(deg * kDegToRad);
            } else {
                throw ValidationError("unknown actuation config key '" + key + "'");
            }
        }
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(std::string("malformed actuation config: ") + e.what());
    }
    return a;
}

}  // namespace

Config config_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw ValidationError("config must be a JSON object");
    Config cfg;
    nlohmann::json spine = j;
    if (auto it = spine.find("actuation"); it != spine.end()) {
        cfg.actuation = actuation_from_json(*it);
        spine.erase(it);
    }
    cfg.spine = params_from_json(spine);
    return cfg;
}

Config load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file '" + path + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::parse_error& e) {
        throw ValidationError("config file '" + path + "' is not valid JSON: " + e.what());
    }
    return config_from_json(j);
}

void validate_actuation(const SpineModel& model, const ActuationConfig& a) {
    if (!(a.psi_max > 0.0)) throw ValidationError("psi_max_deg must be > 0");
    const std::size_t motors = static_cast<std::size_t>(model.params().num_segments) * 4;
    if (!a.zero_offsets.empty() && a.zero_offsets.size() != motors) {
        throw ValidationError("zero_offsets_deg must list " + std::to_string(motors) + " values");
    }
    for (std::size_t m = 0; m < a.zero_offsets.size(); ++m) {
        if (!(a.zero_offsets[m] >= 0.0 && a.zero_offsets[m] < a.psi_max)) {
            throw ValidationError("zero offset of motor " + std::to_string(m) + " must lie in [0, psi_max)");
        }
    }
}

}  // namespace endo
