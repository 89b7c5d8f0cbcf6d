#include "endo/tendon_kinematics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "endo/errors.hpp"

namespace endo {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kHalfPi = std::numbers::pi / 2.0;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Steepness of the smoothed square wave.
constexpr double kWaveGain = 4.0;

}  // namespace

double normalize_angle(double theta) {
    double t = std::fmod(theta, kTwoPi);
    if (t < 0) t += kTwoPi;
    // fmod of a tiny negative can round back up to exactly 2pi.
    if (t >= kTwoPi) t = 0.0;
    return t;
}

std::optional<int> nearest_cardinal(double theta1) {
    const double t = normalize_angle(theta1);
    const double k = std::round(t / kHalfPi);
    if (std::abs(t - k * kHalfPi) <= kCardinalTolerance) {
        return static_cast<int>(k) % 4;
    }
    return std::nullopt;
}

double primary_contraction(double L, double D, double theta2_gap) {
    if (!(theta2_gap >= 0.0 && theta2_gap < kPi)) {
        throw DomainError("primary_contraction: gap bend must lie in [0, pi)");
    }
    const double pull = 2.0 * D * std::sin(0.5 * theta2_gap);
    if (pull >= L) {
        throw DomainError("primary_contraction: contraction " + std::to_string(pull) +
                          " mm reaches the gap length " + std::to_string(L) + " mm");
    }
    return L - pull;
}

TendonLengths boundary_tendon_lengths(double L, double D, double theta2_gap, int cardinal) {
    if (cardinal < 0 || cardinal > 3) throw InvalidChannel(cardinal);
    const double facing = primary_contraction(L, D, theta2_gap);
    const double adjacent = 0.5 * L + 0.5 * facing;
    TendonLengths out;
    out.l[cardinal] = facing;
    out.l[(cardinal + 1) % 4] = adjacent;
    out.l[(cardinal + 2) % 4] = L;
    out.l[(cardinal + 3) % 4] = adjacent;
    return out;
}

double square_wave_weight(double phi) {
    return std::atan(kWaveGain * std::sin(phi)) / std::atan(kWaveGain);
}

BlendWeights blend_weights(double theta1) {
    if (nearest_cardinal(theta1)) {
        throw BoundaryAngle("blend_weights: theta1 lies on a cardinal direction; use the boundary model");
    }
    const double t = normalize_angle(theta1);
    const int quadrant = std::clamp(static_cast<int>(t / kHalfPi), 0, 3);
    const double phi = t - quadrant * kHalfPi;
    BlendWeights w;
    w.w_a = square_wave_weight(phi);
    w.w_b = std::atan(kWaveGain * std::cos(phi)) / std::atan(kWaveGain);
    w.cardinal_a = (quadrant + 1) % 4;
    w.cardinal_b = quadrant;
    return w;
}

SegmentCommand validate_command(const SpineModel& model, SegmentCommand cmd) {
    if (!std::isfinite(cmd.theta1) || !std::isfinite(cmd.theta2)) {
        throw ValidationError("segment command angles must be finite");
    }
    if (cmd.theta2 < 0.0) throw ValidationError("theta2 must be >= 0");
    if (cmd.theta2 > model.params().theta2_max) throw ValidationError("theta2 exceeds theta2_max");
    cmd.theta1 = normalize_angle(cmd.theta1);
    return cmd;
}

TendonPulls segment_tendon_contractions(const SpineModel& model, const SegmentCommand& raw) {
    const SegmentCommand cmd = validate_command(model, raw);
    const SpineParams& p = model.params();
    const double gap_bend = model.gap_angle(cmd.theta2);
    const int gaps = p.gaps_per_segment;

    // Pulls per cardinal direction first, then routed to channels.
    std::array<double, 4> by_direction{};
    if (const auto cardinal = nearest_cardinal(cmd.theta1)) {
        const TendonLengths gap = boundary_tendon_lengths(p.gap_length_L, p.tendon_pitch_D, gap_bend, *cardinal);
        for (int d = 0; d < 4; ++d) by_direction[d] = gaps * (p.gap_length_L - gap.l[d]);
    } else {
        const double full = p.gap_length_L - primary_contraction(p.gap_length_L, p.tendon_pitch_D, gap_bend);
        const BlendWeights w = blend_weights(cmd.theta1);
        by_direction[w.cardinal_a] = gaps * w.w_a * full;
        by_direction[w.cardinal_b] = gaps * w.w_b * full;
    }

    TendonPulls out;
    for (int d = 0; d < 4; ++d) {
        out.s[model.channel_for(static_cast<Direction>(d))] = by_direction[d];
    }
    return out;
}

double max_segment_pull(const SpineModel& model) {
    const SpineParams& p = model.params();
    const double facing = primary_contraction(p.gap_length_L, p.tendon_pitch_D, model.gap_angle(p.theta2_max));
    return p.gaps_per_segment * (p.gap_length_L - facing);
}

}  // namespace endo
