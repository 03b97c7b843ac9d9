#ifndef HFOLD_REPRO_HPP
#define HFOLD_REPRO_HPP

#include <functional>
#include <string>
#include <vector>

namespace hfold {

/// A named reproduction of a published construction. run() returns an
/// empty string on success and a failure description otherwise.
struct ReproCheck {
  std::string name;
  std::string claim;
  std::function<std::string()> run;
};

std::vector<ReproCheck> repro_checks();

struct ReproOutcome {
  std::string name;
  std::string claim;
  bool passed = false;
  std::string detail;
};

/// Runs every check; exceptions count as failures.
std::vector<ReproOutcome> run_repro();

}  // namespace hfold

#endif  // HFOLD_REPRO_HPP
