#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace rvoseval {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDataError = 1;
inline constexpr int kExitUsage = 2;

/// Entry point of the `rvoseval` tool. `args` excludes the program name.
int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rvoseval
