#ifndef ROCCH_CLI_HPP
#define ROCCH_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace rocch::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitData = 2;

/// Runs one `rocch` invocation. `args` excludes the program name. Errors are
/// reported as a single JSON line on `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rocch::cli

#endif  // ROCCH_CLI_HPP
