#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace zsm::cli {

/// Exit codes: 0 success, 2 input/schema error, 3 resource limit,
/// 4 iteration cap, 1 anything else.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace zsm::cli
