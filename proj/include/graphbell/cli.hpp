#pragma once

#include <iosfwd>

namespace graphbell::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;   // unknown command / bad flags
inline constexpr int kExitFile = 3;    // missing or malformed files
inline constexpr int kExitDomain = 4;  // module precondition or invariant failure
inline constexpr int kExitCap = 5;     // LHV assignment-space cap exceeded

/// Seed used when --seed is not given; fixed so default runs are reproducible.
inline constexpr unsigned long long kDefaultSeed = 24601;

/// Parses argv and runs one subcommand, writing documents to `out` and
/// diagnostics to `err`. Returns one of the exit codes above.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace graphbell::cli
