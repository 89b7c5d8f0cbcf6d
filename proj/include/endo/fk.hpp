#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "endo/spine_model.hpp"
#include "endo/tendon_kinematics.hpp"

namespace endo {

struct RigidTransform {
    Eigen::Matrix3d rotation = Eigen::Matrix3d::Identity();
    Eigen::Vector3d translation = Eigen::Vector3d::Zero();

    static RigidTransform identity() { return {}; }
    static RigidTransform translate_z(double dz) {
        RigidTransform t;
        t.translation.z() = dz;
        return t;
    }

    RigidTransform operator*(const RigidTransform& rhs) const {
        return {rotation * rhs.rotation, rotation * rhs.translation + translation};
    }
    Eigen::Vector3d apply(const Eigen::Vector3d& p) const { return rotation * p + translation; }

    // (w, x, y, z), w >= 0.
    Eigen::Quaterniond quaternion() const;
};

struct SpinePose {
    RigidTransform tip;
    // Disc centres, base to tip.
    std::vector<Eigen::Vector3d> polyline;
    // Local transform of each bendable gap, base to tip.
    std::vector<RigidTransform> per_gap_transforms;
};

// Constant-curvature arc of length arc_len bending by theta2_gap in the plane
// at angle theta1 from +X. theta2_gap must lie in [0, pi].
RigidTransform gap_transform(double theta1, double theta2_gap, double arc_len);

// Chains discs (pure translations) and gaps from the base. Throws
// ValidationError when cmds does not match the model.
SpinePose spine_pose(const SpineModel& model, std::span<const SegmentCommand> cmds);

nlohmann::json pose_to_json(const SpinePose& pose);

}  // namespace endo
