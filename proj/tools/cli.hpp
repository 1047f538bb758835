#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace causality::cli {

/// Exit statuses shared by every subcommand.
enum ExitCode : int { kOk = 0, kContractFailed = 1, kInvalidInput = 2 };

/// Runs one `causal` invocation. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err);

}  // namespace causality::cli
