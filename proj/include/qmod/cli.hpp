#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qmod::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kUsage = 1;
inline constexpr int kParse = 2;
inline constexpr int kNumeric = 3;

inline constexpr int kMaxMatrixSize = 16;

/// Runs the command line tool; args[0] is the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qmod::cli
