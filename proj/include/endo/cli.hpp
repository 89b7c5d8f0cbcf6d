#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace endo::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitEnvironment = 3;

// Entry point shared by the `endo` binary and the tests. args excludes argv[0].
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace endo::cli
