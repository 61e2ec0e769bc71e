#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace nondeg::cli {

// Exit codes: 0 success, 1 domain error, 2 usage error.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace nondeg::cli
