#pragma once

#include <string>

namespace endo::detail {

// printf-style fixed notation; a result that would read "-0.000..." is
// written without the sign.
std::string fixed(double value, int decimals);

}  // namespace endo::detail
