#pragma once

#include <array>
#include <cstddef>
#include <numbers>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "endo/spine_model.hpp"
#include "endo/tendon_kinematics.hpp"

namespace endo {

inline constexpr double kDefaultPsiMax = std::numbers::pi;
// Channels on the PWM driver board; motor index = segment * 4 + channel.
inline constexpr std::size_t kDriverChannels = 16;

constexpr std::size_t motor_index(std::size_t segment, Channel channel) {
    return segment * 4 + static_cast<std::size_t>(channel);
}

// Per-segment pulley radii (index 0 nearest the base).
struct PulleySet {
    std::vector<double> radii;
    double psi_max = kDefaultPsiMax;
    // One entry per degenerate (zero radius) pulley.
    std::vector<std::string> warnings;
};

// Radius i carries the cumulative max pull of segments 0..i over the full
// motor range. Throws DomainError for psi_max <= 0 or negative pulls.
PulleySet pulley_radii(std::span<const double> max_pull_per_segment, double psi_max);

// Pulleys for a model with every segment sized for its pull at theta2_max.
PulleySet pulley_radii(const SpineModel& model, double psi_max = kDefaultPsiMax);

struct MotorCommand {
    // rotations[segment][channel], radians.
    std::vector<std::array<double, 4>> rotations;
    // Calibration the command was issued with; informational, see apply_zero_offsets.
    std::vector<std::array<double, 4>> zero_offsets;
    double psi_max = kDefaultPsiMax;

    std::size_t motor_count() const noexcept { return rotations.size() * 4; }
};

// Distal motors take up the pull of every proximal segment on the same
// channel, so each tendon stays taut. Throws RangeExceeded.
MotorCommand motor_rotations(std::span<const TendonPulls> pulls, const PulleySet& pulleys);

struct BoundaryChannels {
    Channel facing;
    std::array<Channel, 2> adjacent;
    Channel opposing;
};

struct BlendChannels {
    // Weighted by w_a / w_b of blend_weights respectively.
    Channel channel_a;
    Channel channel_b;
};

using ActiveChannels = std::variant<BoundaryChannels, BlendChannels>;

ActiveChannels channel_map(double theta1, const ChannelLayout& layout = kIdentityLayout);

// Servo targets, indexed by motor_index.
struct ServoTargets {
    std::vector<double> targets;
    double psi_max = kDefaultPsiMax;
};

// target = rotation + offset. Rejects (never clamps) anything outside
// [0, psi_max]. Offsets (per motor_index) must lie in [0, psi_max); an empty
// span means all zero.
ServoTargets apply_zero_offsets(const MotorCommand& cmd, std::span<const double> calibration);

// Motor-range settings that accompany a spine config.
struct ActuationConfig {
    double psi_max = kDefaultPsiMax;
    // Per motor, radians; empty means all zero.
    std::vector<double> zero_offsets;
};

nlohmann::json motor_command_to_json(const MotorCommand& cmd);
nlohmann::json servo_targets_to_json(const ServoTargets& targets);

}  // namespace endo
