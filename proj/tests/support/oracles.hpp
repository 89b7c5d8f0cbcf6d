#pragma once

// Independent reference computations used only by the test suites.

#include <Eigen/Dense>

namespace endo::oracle {

// Facing-tendon length from the radius-of-curvature route: solve
// sin(theta/2) = (L/2) / (D + R) for R, then L1 = 2 R sin(theta/2).
// Throws endo::DomainError at theta == 0.
double chord_geometry(double L, double D, double theta2_gap);

struct NumericArc {
    Eigen::Matrix3d rotation;
    Eigen::Vector3d translation;
};

// Integrates a bent gap as n_steps straight micro-segments, turning by
// theta2_gap / n_steps about the bend axis between them (midpoint rule).
NumericArc pcc_numeric(double theta1, double theta2_gap, double arc_len, long n_steps);

}  // namespace endo::oracle
