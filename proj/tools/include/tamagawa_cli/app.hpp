#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace tamagawa::cli {

enum ExitCode : int { Ok = 0, Violation = 1, UsageError = 2, Incomplete = 3, Bug = 4 };

struct Environment {
  std::optional<std::string> fixtures_env;  // TAMAGAWA_FIXTURES
  std::string default_fixtures;             // used when it exists and nothing else is given
};

/// Runs one command line (args exclude the program name).  Everything
/// printed goes to `out` / `err`; the return value is the exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, const Environment& env);

}  // namespace tamagawa::cli
