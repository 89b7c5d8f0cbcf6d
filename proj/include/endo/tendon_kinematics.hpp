#pragma once

#include <array>
#include <optional>

#include "endo/spine_model.hpp"

namespace endo {

// Two-angle segment command. theta1 is the bend direction, theta2 the total
// bend of the segment, both radians.
struct SegmentCommand {
    double theta1 = 0.0;
    double theta2 = 0.0;
};

// Tendon path lengths across a single gap, indexed by cardinal direction.
struct TendonLengths {
    std::array<double, 4> l{};
};

// Total contraction of each channel's tendon over one segment, mm.
struct TendonPulls {
    std::array<double, 4> s{};
};

// Angles closer than this to a cardinal direction use the three-tendon model.
inline constexpr double kCardinalTolerance = 1e-6;

// Wraps into [0, 2*pi).
double normalize_angle(double theta);

// Cardinal index k when theta1 is within kCardinalTolerance of k*pi/2.
std::optional<int> nearest_cardinal(double theta1);

// Shortened length of the tendon facing the bend for one gap:
// L - 2 D sin(theta/2). Throws DomainError when the contraction reaches L.
double primary_contraction(double L, double D, double theta2_gap);

// Three-tendon state for a bend toward cardinal `cardinal`. The opposing
// tendon stays at L, the two neighbours split the facing contraction in half.
TendonLengths boundary_tendon_lengths(double L, double D, double theta2_gap, int cardinal);

struct BlendWeights {
    double w_a = 0.0;
    double w_b = 0.0;
    // Cardinal toward which the in-quadrant angle increases (owns w_a).
    int cardinal_a = 0;
    int cardinal_b = 0;
};

// Smoothed-square-wave split between the two cardinals bracketing theta1.
// Throws BoundaryAngle when theta1 lies on a cardinal direction.
BlendWeights blend_weights(double theta1);

// Raw wave without the boundary guard; phi in [0, pi/2].
double square_wave_weight(double phi);

// Validates cmd against the model's limits. Returns the command with theta1
// normalised. Throws ValidationError.
SegmentCommand validate_command(const SpineModel& model, SegmentCommand cmd);

// Per-channel contraction for a whole segment (uniform bend across gaps).
TendonPulls segment_tendon_contractions(const SpineModel& model, const SegmentCommand& cmd);

// Largest pull any single channel sees for a segment across all commands
// within theta2_max.
double max_segment_pull(const SpineModel& model);

}  // namespace endo
