#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace labelguide::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitParse = 2;
inline constexpr int kExitLayout = 3;

/// Entry point of the labelguide tool. Subcommands: layout, simulate, scene,
/// replay and serve. Returns the process exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace labelguide::cli
