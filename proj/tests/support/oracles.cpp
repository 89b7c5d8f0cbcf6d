#include "oracles.hpp"

#include <cmath>
#include <stdexcept>

#include "endo/errors.hpp"

namespace endo::oracle {

double chord_geometry(double L, double D, double theta2_gap) {
    if (theta2_gap == 0.0) throw DomainError("chord oracle undefined at zero bend");
    const double s = std::sin(0.5 * theta2_gap);
    const double radius = 0.5 * L / s - D;
    return 2.0 * radius * s;
}

NumericArc pcc_numeric(double theta1, double theta2_gap, double arc_len, long n_steps) {
    if (n_steps < 1) throw std::invalid_argument("n_steps must be >= 1");
    const Eigen::Vector3d axis(-std::sin(theta1), std::cos(theta1), 0.0);
    const double dtheta = theta2_gap / static_cast<double>(n_steps);
    const Eigen::Vector3d step(0.0, 0.0, arc_len / static_cast<double>(n_steps));
    const Eigen::Matrix3d turn = Eigen::AngleAxisd(dtheta, axis).toRotationMatrix();
    const Eigen::Matrix3d half_turn = Eigen::AngleAxisd(0.5 * dtheta, axis).toRotationMatrix();

    Eigen::Matrix3d heading = Eigen::Matrix3d::Identity();
    Eigen::Vector3d position = Eigen::Vector3d::Zero();
    Eigen::Vector3d carry = Eigen::Vector3d::Zero();  // Kahan compensation
    for (long i = 0; i < n_steps; ++i) {
        const Eigen::Vector3d delta = heading * (half_turn * step) - carry;
        const Eigen::Vector3d next = position + delta;
        carry = (next - position) - delta;
        position = next;
        heading = heading * turn;
    }
    return {heading, position};
}

}  // namespace endo::oracle
