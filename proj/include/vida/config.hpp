// SPDX-License-Identifier: Apache-2.0
#ifndef VIDA_CONFIG_HPP
#define VIDA_CONFIG_HPP

#include <string>
#include <vector>

#include "vida/domain.hpp"

namespace vida {

// A parsed run configuration: simulation parameters plus where the area
// profiles come from and where results go.
struct RunConfig {
  SimParams params;
  std::vector<std::string> profile_paths;
  std::string out_dir = "out";
};

// Parse a flat key=value config file. `#` and `;` start comments,
// [section] lines are cosmetic, keys are SimParams field names plus
// `profiles` (repeatable, appends) and `out_dir`. Unknown keys and
// malformed values fail with the line number.
RunConfig load_config(const std::string& path);

} // namespace vida

#endif
