#pragma once

// Command-line surface: primes, forms, subgroups, graphs, assemble, count,
// selftest. Human tables by default, JSON with --json.

#include <ostream>
#include <string>
#include <vector>

namespace ncm::cli {

enum class ExitCode : int { ok = 0, verification_failure = 1, usage_error = 2 };

struct CommandResult {
    enum class Status { ok, error };
    Status status = Status::ok;
    ExitCode code = ExitCode::ok;
    std::string payload;  // table or JSON document, newline terminated
};

/// Runs one invocation. `args` excludes the program name. Output goes to
/// `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ncm::cli
