#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace qrs {

struct CriterionResult {
  int number = 0;
  std::string title;
  bool passed = false;
  std::vector<std::string> details; // mismatches first, then a summary
  double seconds = 0;
};

struct AcceptanceOptions {
  std::uint64_t seed = 20240611;
  /// Random inversion sets drawn across the rank 4 to 6 corpus.
  int random_instances = 1200;
  /// Progress messages, if non-null.
  std::ostream* log = nullptr;
};

/// Runs the eight acceptance criteria and returns them in order.
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opt = {});

/// "criterion N: PASS  title" lines, followed by indented details when
/// `verbose` is set.
void print_acceptance(std::ostream& out, const std::vector<CriterionResult>& results, bool verbose);

} // namespace qrs
