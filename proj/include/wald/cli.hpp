#ifndef WALD_CLI_HPP
#define WALD_CLI_HPP

#include <iosfwd>

namespace wald::cli {

inline constexpr int kOk = 0;
inline constexpr int kUserError = 1;
inline constexpr int kNumericFailure = 2;

/// Entry point behind the `wald` executable. Writes results to `out` and
/// one-line diagnostics to `err`; returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace wald::cli

#endif  // WALD_CLI_HPP
