#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace endo {

// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Invalid parameters or commands (violated invariant or out-of-range input).
class ValidationError : public Error {
public:
    using Error::Error;
};

// Input outside the domain of a closed-form model.
class DomainError : public Error {
public:
    using Error::Error;
};

class InvalidChannel : public Error {
public:
    explicit InvalidChannel(int channel)
        : Error("InvalidChannel: cardinal index " + std::to_string(channel) + " outside 0..3") {}
};

// Raised by blend_weights when theta1 sits on a cardinal direction.
class BoundaryAngle : public Error {
public:
    using Error::Error;
};

// A motor target falls outside [0, psi_max].
class RangeExceeded : public Error {
public:
    RangeExceeded(std::size_t motor, double target_rad, double overshoot_rad);

    std::size_t motor() const noexcept { return motor_; }
    double target() const noexcept { return target_; }
    // Positive distance past the violated bound, radians.
    double overshoot() const noexcept { return overshoot_; }

private:
    std::size_t motor_;
    double target_;
    double overshoot_;
};

class IoError : public Error {
public:
    using Error::Error;
};

class EmptyInput : public Error {
public:
    using Error::Error;
};

}  // namespace endo
