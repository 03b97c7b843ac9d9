#ifndef HFOLD_CLI_HPP
#define HFOLD_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

namespace hfold {

enum ExitCode : int {
  kExitOk = 0,
  kExitFalsified = 1,
  kExitUndetermined = 2,
  kExitUsage = 3,
};

/// Runs one command; args exclude the program name. Defaults for Q and the
/// validation window come from HFOLD_DEFAULT_Q and HFOLD_DEFAULT_WINDOW.
int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hfold

#endif  // HFOLD_CLI_HPP
