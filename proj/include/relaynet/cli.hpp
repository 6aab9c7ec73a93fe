#pragma once

#include <iosfwd>

namespace relaynet {

// Exit codes: 0 success, 1 a verification found a violation, 2 usage or
// input error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitViolation = 1;
inline constexpr int kExitUsage = 2;

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace relaynet
