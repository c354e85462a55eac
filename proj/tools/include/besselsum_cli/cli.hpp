#pragma once

#include <string>
#include <vector>

namespace besselsum::cli {

struct RunResult {
    /// 0 all verdicts pass, 1 a verdict failed or a computation broke down, 2 malformed input.
    int exit_code = 0;
    std::string out;
    std::string err;
};

/// Runs one command. `args` excludes the program name. Nothing is written to `out` unless the
/// command completes.
RunResult run(const std::vector<std::string>& args);

/// 64-bit FNV-1a as 16 hex digits.
std::string fnv1a_hex(const std::string& text);

} // namespace besselsum::cli
