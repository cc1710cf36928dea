#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace ocs {

// Runs the command line (without the program name). Exit codes: 0 success,
// 1 domain error (JSON on err), 2 usage error or malformed input.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace ocs
