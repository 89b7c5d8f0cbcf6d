#include "endo/errors.hpp"

#include <cstdio>

namespace endo {

namespace {

std::string range_message(std::size_t motor, double target, double overshoot) {
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "RangeExceeded: motor %zu target %.6f rad is outside the servo range by %.6f rad",
                  motor, target, overshoot);
    return buf;
}

}  // namespace

RangeExceeded::RangeExceeded(std::size_t motor, double target_rad, double overshoot_rad)
    : Error(range_message(motor, target_rad, overshoot_rad)),
      motor_(motor),
      target_(target_rad),
      overshoot_(overshoot_rad) {}

}  // namespace endo
