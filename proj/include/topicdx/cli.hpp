#pragma once

#include <string_view>

namespace topicdx::cli {

inline constexpr std::string_view kVersion = "0.1.0";

enum ExitCode : int { kOk = 0, kUsage = 1, kInput = 2, kPipeline = 3, kIo = 4 };

/// Runs one subcommand: build-dict | segment | featurize | select | train |
/// grid | cv | holdout | synth. Errors are printed to stderr and mapped onto
/// the exit codes above.
int run(int argc, const char* const* argv);

}  // namespace topicdx::cli
