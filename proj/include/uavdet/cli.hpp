#ifndef UAVDET_CLI_HPP_
#define UAVDET_CLI_HPP_

#include <iosfwd>
#include <span>
#include <string>

namespace uavdet {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;     // I/O or input errors
inline constexpr int kExitUsage = 2;       // unknown subcommand or flag
inline constexpr int kExitBelowFloor = 3;  // eval --fail-under not met

// Entry point of the `uavdet` tool. `args` excludes the program name.
// Subcommands: split, augment, resize, eval, compare, synth, render.
int cli_main(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace uavdet

#endif  // UAVDET_CLI_HPP_
