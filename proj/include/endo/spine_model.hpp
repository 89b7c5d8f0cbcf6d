#pragma once

#include <array>
#include <numbers>
#include <string>

#include <json.hpp>

namespace endo {

// Cardinal bending directions, in the order of increasing theta1 (k * pi/2).
enum class Direction : int { PlusX = 0, PlusY = 1, MinusX = 2, MinusY = 3 };

// Motor channel index within one segment (0..3).
using Channel = int;

// layout[channel] is the direction that channel's tendon pulls toward.
using ChannelLayout = std::array<Direction, 4>;

inline constexpr ChannelLayout kIdentityLayout{Direction::PlusX, Direction::PlusY,
                                               Direction::MinusX, Direction::MinusY};

std::string to_string(Direction d);
Direction direction_from_string(const std::string& s);

// Parametric description of the disc/ligament spine. Lengths in mm.
struct SpineParams {
    int num_segments = 3;
    int discs_per_segment = 5;
    int gaps_per_segment = 4;
    double disc_diameter = 15.0;
    double disc_height = 4.0;
    // Maximum separation between two adjacent rigid discs.
    double gap_length_L = 10.0;
    // Radial distance from the spine axis to the tendon guides.
    double tendon_pitch_D = 6.0;
    // Informational only, degrees.
    double ligament_angle_alpha = 40.0;
    // Maximum per-segment bend, radians.
    double theta2_max = std::numbers::pi / 2.0;
    ChannelLayout channel_layout = kIdentityLayout;

    bool operator==(const SpineParams&) const = default;
};

// Validated spine with derived lengths. Immutable once built.
class SpineModel {
public:
    const SpineParams& params() const noexcept { return params_; }
    double segment_backbone_length() const noexcept { return segment_length_; }
    double total_length_H() const noexcept { return total_length_; }

    // Bend carried by each gap when a segment is commanded to theta2.
    double gap_angle(double theta2) const noexcept { return theta2 / params_.gaps_per_segment; }

    // Inverse of channel_layout.
    Channel channel_for(Direction d) const noexcept { return channel_of_[static_cast<int>(d)]; }

private:
    friend SpineModel build_spine(const SpineParams& params);
    SpineModel() = default;

    SpineParams params_;
    double segment_length_ = 0.0;
    double total_length_ = 0.0;
    std::array<Channel, 4> channel_of_{};
};

// Throws ValidationError naming the first violated invariant.
SpineModel build_spine(const SpineParams& params);

// JSON keys match the SpineParams field names. Unknown keys are rejected,
// missing keys keep their defaults, and gaps_per_segment is derived when absent.
SpineParams params_from_json(const nlohmann::json& j);
nlohmann::json params_to_json(const SpineParams& p);
SpineParams load_params(const std::string& path);

}  // namespace endo
