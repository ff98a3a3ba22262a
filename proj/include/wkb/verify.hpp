#pragma once

// Self-contained verification suites: each runs a fixed, deterministic
// experiment against an independent oracle and reports named residuals with
// their pinned bounds. Shared by the command-line `verify` subcommand and the
// acceptance test binary.

#include <string>
#include <string_view>
#include <vector>

namespace wkb {

struct SuiteCheck {
  std::string name;
  double value = 0.0;  // measured residual (or deviation ratio)
  double bound = 0.0;  // pinned acceptance bound
  bool pass = false;
};

struct SuiteReport {
  std::string suite;
  std::vector<SuiteCheck> checks;
  bool passed() const;
  double worst() const;  // max of value/bound over all checks
};

/// Coefficient translation identity between two expansion points.
SuiteReport verify_eq21();
/// The Borel-summed recessive factor satisfies its defining ODE.
SuiteReport verify_appendix2();
/// Pair-solution three-way comparison and exponential-gap slope.
SuiteReport verify_lemma3();
/// Connection coefficients for the linear characteristic.
SuiteReport verify_connection();
/// Bound-state energies against closed forms and a shooting oracle.
SuiteReport verify_eigen();

std::vector<std::string> suite_names();
/// Dispatch by name; throws invalid_argument for an unknown suite.
SuiteReport run_suite(std::string_view name);

}  // namespace wkb
