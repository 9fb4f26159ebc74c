#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace ratg::cli {

/// Runs one `ratg` invocation (arguments without the program name).
/// Returns 0 on success, 1 on usage or input errors, 2 when a witness finds a violation.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ratg::cli
