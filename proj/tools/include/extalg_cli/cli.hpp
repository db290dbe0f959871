#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace extalg::cli {

// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitInvalidModule = 2;
inline constexpr int kExitInconclusive = 3;
inline constexpr int kExitPrecondition = 4;
inline constexpr int kExitInternal = 1;

// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace extalg::cli
