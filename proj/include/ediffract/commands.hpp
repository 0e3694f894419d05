#pragma once

#include <string>
#include <vector>

#include "ediffract/config.hpp"
#include "ediffract/csv.hpp"

namespace ediffract {

const std::vector<std::string>& command_names();

// throws UsageError when the config lacks what the command needs
ResultTable run(const std::string& command, const RunConfig& cfg);

}  // namespace ediffract
