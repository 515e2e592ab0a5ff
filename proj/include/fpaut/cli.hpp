#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace fpaut::cli {

enum ExitCode { ok = 0, check_failed = 1, parse_error = 2, validation_error = 3 };

/// `args` excludes the program name. Reports go to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fpaut::cli
