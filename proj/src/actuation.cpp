#include "endo/actuation.hpp"

#include <cmath>
#include <string>

#include "endo/errors.hpp"

namespace endo {

namespace {

// Relative slack on the servo range so that exact-range commands survive
// floating-point rounding. Values are still reported unclamped.
constexpr double kRangeSlack = 1e-12;

bool within_range(double value, double psi_max) {
    const double slack = kRangeSlack * psi_max;
    return value >= -slack && value <= psi_max + slack;
}

double overshoot(double value, double psi_max) {
    return value < 0.0 ? -value : value - psi_max;
}

}  // namespace

PulleySet pulley_radii(std::span<const double> max_pull_per_segment, double psi_max) {
    if (!(psi_max > 0.0) || !std::isfinite(psi_max)) {
        throw DomainError("pulley_radii: psi_max must be > 0");
    }
    PulleySet out;
    out.psi_max = psi_max;
    out.radii.reserve(max_pull_per_segment.size());
    double cumulative = 0.0;
    for (std::size_t i = 0; i < max_pull_per_segment.size(); ++i) {
        const double s = max_pull_per_segment[i];
        if (!(s >= 0.0) || !std::isfinite(s)) {
            throw DomainError("pulley_radii: max pull of segment " + std::to_string(i + 1) + " must be >= 0");
        }
        cumulative += s;
        out.radii.push_back(cumulative / psi_max);
        if (out.radii.back() == 0.0) {
            out.warnings.push_back("DegeneratePulley: segment " + std::to_string(i + 1) +
                                   " has zero cumulative pull and a zero-radius pulley");
        }
    }
    return out;
}

PulleySet pulley_radii(const SpineModel& model, double psi_max) {
    const std::vector<double> max_pulls(model.params().num_segments, max_segment_pull(model));
    return pulley_radii(max_pulls, psi_max);
}

MotorCommand motor_rotations(std::span<const TendonPulls> pulls, const PulleySet& pulleys) {
    if (pulls.size() != pulleys.radii.size()) {
        throw ValidationError("motor_rotations: " + std::to_string(pulls.size()) + " segment pulls for " +
                              std::to_string(pulleys.radii.size()) + " pulleys");
    }
    MotorCommand cmd;
    cmd.psi_max = pulleys.psi_max;
    cmd.rotations.assign(pulls.size(), {});
    cmd.zero_offsets.assign(pulls.size(), {});

    std::array<double, 4> cumulative{};
    for (std::size_t seg = 0; seg < pulls.size(); ++seg) {
        const double radius = pulleys.radii[seg];
        for (Channel c = 0; c < 4; ++c) {
            cumulative[c] += pulls[seg].s[c];
            const double total = cumulative[c];
            double psi = 0.0;
            if (total != 0.0) {
                if (radius == 0.0) {
                    throw RangeExceeded(motor_index(seg, c), INFINITY, INFINITY);
                }
                psi = total / radius;
            }
            if (!within_range(psi, pulleys.psi_max)) {
                throw RangeExceeded(motor_index(seg, c), psi, overshoot(psi, pulleys.psi_max));
            }
            cmd.rotations[seg][c] = psi;
        }
    }
    return cmd;
}

ActiveChannels channel_map(double theta1, const ChannelLayout& layout) {
    std::array<Channel, 4> channel_of{};
    for (Channel c = 0; c < 4; ++c) channel_of[static_cast<int>(layout[c])] = c;

    if (const auto k = nearest_cardinal(theta1)) {
        return BoundaryChannels{channel_of[*k], {channel_of[(*k + 1) % 4], channel_of[(*k + 3) % 4]},
                                channel_of[(*k + 2) % 4]};
    }
    const BlendWeights w = blend_weights(theta1);
    return BlendChannels{channel_of[w.cardinal_a], channel_of[w.cardinal_b]};
}

ServoTargets apply_zero_offsets(const MotorCommand& cmd, std::span<const double> calibration) {
    const std::size_t motors = cmd.motor_count();
    if (!calibration.empty() && calibration.size() != motors) {
        throw ValidationError("apply_zero_offsets: expected " + std::to_string(motors) + " offsets, got " +
                              std::to_string(calibration.size()));
    }
    ServoTargets out;
    out.psi_max = cmd.psi_max;
    out.targets.reserve(motors);
    for (std::size_t seg = 0; seg < cmd.rotations.size(); ++seg) {
        for (Channel c = 0; c < 4; ++c) {
            const std::size_t m = motor_index(seg, c);
            const double offset = calibration.empty() ? 0.0 : calibration[m];
            if (!(offset >= 0.0 && offset < cmd.psi_max)) {
                throw ValidationError("zero offset of motor " + std::to_string(m) + " must lie in [0, psi_max)");
            }
            const double target = cmd.rotations[seg][c] + offset;
            if (!within_range(target, cmd.psi_max)) {
                throw RangeExceeded(m, target, overshoot(target, cmd.psi_max));
            }
            out.targets.push_back(target);
        }
    }
    return out;
}

nlohmann::json motor_command_to_json(const MotorCommand& cmd) {
    constexpr double kDeg = 180.0 / std::numbers::pi;
    nlohmann::json motors = nlohmann::json::array();
    for (std::size_t seg = 0; seg < cmd.rotations.size(); ++seg) {
        for (Channel c = 0; c < 4; ++c) {
            const double offset = cmd.zero_offsets.empty() ? 0.0 : cmd.zero_offsets[seg][c];
            motors.push_back({{"motor", motor_index(seg, c)},
                              {"segment", seg + 1},
                              {"channel", c},
                              {"rotation_deg", cmd.rotations[seg][c] * kDeg},
                              {"zero_offset_deg", offset * kDeg}});
        }
    }
    return {{"psi_max_deg", cmd.psi_max * kDeg}, {"driver_channels", kDriverChannels}, {"motors", motors}};
}

nlohmann::json servo_targets_to_json(const ServoTargets& targets) {
    constexpr double kDeg = 180.0 / std::numbers::pi;
    // Unused driver channels are null.
    nlohmann::json channels = nlohmann::json::array();
    for (std::size_t m = 0; m < std::max(kDriverChannels, targets.targets.size()); ++m) {
        if (m < targets.targets.size()) channels.push_back(targets.targets[m] * kDeg);
        else channels.push_back(nullptr);
    }
    return {{"psi_max_deg", targets.psi_max * kDeg}, {"targets_deg", channels}};
}

}  // namespace endo
