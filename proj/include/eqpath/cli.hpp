#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace eqpath::cli {

// Exit codes: 0 success, 1 check failure, 2 solver rejection or precondition,
// 3 enumeration budget, 64 parse error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace eqpath::cli
