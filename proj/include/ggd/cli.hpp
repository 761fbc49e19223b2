#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ggd {

// Runs one CLI invocation.  Exit codes: 0 success/true, 1 checked-false,
// 2 error, 3 budget-exceeded.
int run_command(const std::vector<std::string>& args, std::ostream& out,
                std::ostream& err);

}  // namespace ggd
