#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace bergman::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalid = 1;
inline constexpr int kExitVerification = 2;

int run(int argc, char** argv);
/// `args` excludes the program name. Output files named by --out are still written.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bergman::cli
