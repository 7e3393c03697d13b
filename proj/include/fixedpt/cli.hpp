#ifndef FIXEDPT_CLI_HPP_
#define FIXEDPT_CLI_HPP_

#include <iosfwd>
#include <string>
#include <vector>

namespace fixedpt {

/// Exit codes of the command-line tool.
inline constexpr int kExitOk = 0;
/// A constraint failed, a lemma replay found a counterexample, or a search
/// produced a survivor where none is expected.
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

/// Runs the tool with `args` (program name excluded).
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace fixedpt

#endif  // FIXEDPT_CLI_HPP_
