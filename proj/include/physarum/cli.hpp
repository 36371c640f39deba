#pragma once

#include <iosfwd>

namespace physarum {

inline constexpr int kExitOk = 0;
inline constexpr int kExitRuntimeError = 1;
inline constexpr int kExitConfigError = 2;

/// Entry point of the `physarum` tool:
///
///   physarum run --config <path> [--seed N] [--out DIR]
///   physarum preset <li|la> [--seed N] [--out DIR]
///   physarum validate --config <path>
///
/// Returns 0 on success, 2 for usage/config/validation errors, 1 for runtime
/// and I/O failures.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace physarum
