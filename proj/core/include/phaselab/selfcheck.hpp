#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace phaselab {

struct CheckResult {
  std::string name;
  double residual{};
  double threshold{};
  bool passed{false};
};

/// Run the built-in identity and consistency suite: plate rewrite identities,
/// gadget equivalences, the intensity closed form against the plate product,
/// the theory phase against the kinematic integral, gauge nullification, and
/// the extraction round trip. corrupt_offset, when nonzero, is added to one
/// plate angle of the seven-plate train so failure reporting can be exercised.
std::vector<CheckResult> run_selfcheck(std::uint64_t seed = 7,
                                       double corrupt_offset = 0.0);

bool all_passed(const std::vector<CheckResult> &results);

/// Fixed-width human-readable table of the results.
std::string selfcheck_table(const std::vector<CheckResult> &results);

} // namespace phaselab
