#include "endo/spine_model.hpp"

#include <cmath>
#include <fstream>
#include <set>

#include "endo/errors.hpp"

namespace endo {

std::string to_string(Direction d) {
    switch (d) {
        case Direction::PlusX: return "+X";
        case Direction::PlusY: return "+Y";
        case Direction::MinusX: return "-X";
        case Direction::MinusY: return "-Y";
    }
    return "?";
}

Direction direction_from_string(const std::string& s) {
    if (s == "+X") return Direction::PlusX;
    if (s == "+Y") return Direction::PlusY;
    if (s == "-X") return Direction::MinusX;
    if (s == "-Y") return Direction::MinusY;
    throw ValidationError("channel_layout: unknown direction '" + s + "' (expected +X, +Y, -X or -Y)");
}

namespace {

void require(bool ok, const std::string& what) {
    if (!ok) throw ValidationError("invalid spine parameters: " + what);
}

}  // namespace

SpineModel build_spine(const SpineParams& p) {
    require(p.num_segments >= 1, "num_segments must be >= 1");
    require(p.discs_per_segment >= 2, "discs_per_segment must be >= 2");
    require(p.gaps_per_segment == p.discs_per_segment - 1,
            "gaps_per_segment must equal discs_per_segment - 1");
    require(std::isfinite(p.disc_diameter) && p.disc_diameter > 0, "disc_diameter must be > 0");
    require(std::isfinite(p.disc_height) && p.disc_height >= 0, "disc_height must be >= 0");
    require(std::isfinite(p.gap_length_L) && p.gap_length_L > 0, "gap_length_L must be > 0");
    require(std::isfinite(p.tendon_pitch_D) && p.tendon_pitch_D > 0, "tendon_pitch_D must be > 0");
    require(2.0 * p.tendon_pitch_D < p.disc_diameter,
            "tendon guides lie outside the disc (2 * tendon_pitch_D >= disc_diameter)");
    require(std::isfinite(p.ligament_angle_alpha), "ligament_angle_alpha must be finite");
    require(std::isfinite(p.theta2_max) && p.theta2_max > 0 && p.theta2_max <= std::numbers::pi,
            "theta2_max must lie in (0, pi]");
    const double gap_bend = p.theta2_max / p.gaps_per_segment;
    require(gap_bend < std::numbers::pi, "per-gap bend theta2_max / gaps_per_segment must be < pi");
    require(2.0 * p.tendon_pitch_D * std::sin(0.5 * gap_bend) < p.gap_length_L,
            "tendon contraction exceeds gap length at theta2_max");

    std::set<Direction> seen(p.channel_layout.begin(), p.channel_layout.end());
    require(seen.size() == 4, "channel_layout must be a permutation of +X, +Y, -X, -Y");

    SpineModel m;
    m.params_ = p;
    m.segment_length_ = p.discs_per_segment * p.disc_height + p.gaps_per_segment * p.gap_length_L;
    m.total_length_ = p.num_segments * m.segment_length_;
    for (Channel c = 0; c < 4; ++c) {
        m.channel_of_[static_cast<int>(p.channel_layout[c])] = c;
    }
    return m;
}

SpineParams params_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw ValidationError("spine config must be a JSON object");
    SpineParams p;
    bool gaps_given = false;
    try {
        for (const auto& [key, value] : j.items()) {
            if (key == "num_segments") p.num_segments = value.get<int>();
            else if (key == "discs_per_segment") p.discs_per_segment = value.get<int>();
            else if (key == "gaps_per_segment") {
                p.gaps_per_segment = value.get<int>();
                gaps_given = true;
            }
            else if (key == "disc_diameter") p.disc_diameter = value.get<double>();
            else if (key == "disc_height") p.disc_height = value.get<double>();
            else if (key == "gap_length_L") p.gap_length_L = value.get<double>();
            else if (key == "tendon_pitch_D") p.tendon_pitch_D = value.get<double>();
            else if (key == "ligament_angle_alpha") p.ligament_angle_alpha = value.get<double>();
            else if (key == "theta2_max") p.theta2_max = value.get<double>();
            else if (key == "channel_layout") {
                const auto names = value.get<std::vector<std::string>>();
                if (names.size() != 4) throw ValidationError("channel_layout must list 4 directions");
                for (std::size_t c = 0; c < 4; ++c) p.channel_layout[c] = direction_from_string(names[c]);
            }
            else throw ValidationError("unknown spine config key '" + key + "'");
        }
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(std::string("malformed spine config: ") + e.what());
    }
    if (!gaps_given) p.gaps_per_segment = p.discs_per_segment - 1;
    return p;
}

nlohmann::json params_to_json(const SpineParams& p) {
    nlohmann::json layout = nlohmann::json::array();
    for (Direction d : p.channel_layout) layout.push_back(to_string(d));
    return {
        {"num_segments", p.num_segments},
        {"discs_per_segment", p.discs_per_segment},
        {"gaps_per_segment", p.gaps_per_segment},
        {"disc_diameter", p.disc_diameter},
        {"disc_height", p.disc_height},
        {"gap_length_L", p.gap_length_L},
        {"tendon_pitch_D", p.tendon_pitch_D},
        {"ligament_angle_alpha", p.ligament_angle_alpha},
        {"theta2_max", p.theta2_max},
        {"channel_layout", layout},
    };
}

SpineParams load_params(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file '" + path + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::parse_error& e) {
        throw ValidationError("config file '" + path + "' is not valid JSON: " + e.what());
    }
    return params_from_json(j);
}

}  // namespace endo
