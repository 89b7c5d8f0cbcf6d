#include "endo/fk.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "endo/errors.hpp"

namespace endo {

Eigen::Quaterniond RigidTransform::quaternion() const {
    Eigen::Quaterniond q(rotation);
    q.normalize();
    if (q.w() < 0) q.coeffs() *= -1.0;
    return q;
}

RigidTransform gap_transform(double theta1, double theta2_gap, double arc_len) {
    if (!(theta2_gap >= 0.0 && theta2_gap <= std::numbers::pi)) {
        throw DomainError("gap_transform: gap bend must lie in [0, pi]");
    }
    if (theta2_gap == 0.0) return RigidTransform::translate_z(arc_len);

    const double c1 = std::cos(theta1);
    const double s1 = std::sin(theta1);
    const double c2 = std::cos(theta2_gap);
    const double s2 = std::sin(theta2_gap);

    Eigen::Matrix3d rz;
    rz << c1, -s1, 0.0,
          s1,  c1, 0.0,
          0.0, 0.0, 1.0;
    Eigen::Matrix3d bend;
    bend << c2, 0.0, s2,
            0.0, 1.0, 0.0,
            -s2, 0.0, c2;

    // Arc of radius arc_len/theta in the local X-Z plane.
    const double half = std::sin(0.5 * theta2_gap);
    const Eigen::Vector3d in_plane(arc_len * 2.0 * half * half / theta2_gap, 0.0,
                                   arc_len * s2 / theta2_gap);

    RigidTransform out;
    out.rotation = rz * bend * rz.transpose();
    out.translation = rz * in_plane;
    return out;
}

SpinePose spine_pose(const SpineModel& model, std::span<const SegmentCommand> cmds) {
    const SpineParams& p = model.params();
    if (cmds.size() != static_cast<std::size_t>(p.num_segments)) {
        throw ValidationError("expected " + std::to_string(p.num_segments) + " segment commands, got " +
                              std::to_string(cmds.size()));
    }

    SpinePose pose;
    pose.polyline.reserve(p.num_segments * p.discs_per_segment);
    pose.per_gap_transforms.reserve(p.num_segments * p.gaps_per_segment);

    const RigidTransform half_disc = RigidTransform::translate_z(0.5 * p.disc_height);
    RigidTransform frame;
    for (const SegmentCommand& raw : cmds) {
        const SegmentCommand cmd = validate_command(model, raw);
        const RigidTransform gap = gap_transform(cmd.theta1, model.gap_angle(cmd.theta2), p.gap_length_L);
        for (int disc = 0; disc < p.discs_per_segment; ++disc) {
            frame = frame * half_disc;
            pose.polyline.push_back(frame.translation);
            frame = frame * half_disc;
            if (disc < p.gaps_per_segment) {
                pose.per_gap_transforms.push_back(gap);
                frame = frame * gap;
            }
        }
    }
    pose.tip = frame;
    return pose;
}

nlohmann::json pose_to_json(const SpinePose& pose) {
    const Eigen::Quaterniond q = pose.tip.quaternion();
    nlohmann::json polyline = nlohmann::json::array();
    for (const auto& v : pose.polyline) polyline.push_back({v.x(), v.y(), v.z()});
    const auto& t = pose.tip.translation;
    return {
        {"tip", {{"translation_mm", {t.x(), t.y(), t.z()}}, {"quaternion_wxyz", {q.w(), q.x(), q.y(), q.z()}}}},
        {"polyline_mm", polyline},
    };
}

}  // namespace endo
