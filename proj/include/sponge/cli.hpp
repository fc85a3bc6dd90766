#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace sponge::cli {

/// Runs one command line (without the program name). Machine output goes to
/// `out`, diagnostics to `err`. Returns 0 on success, 1 on domain errors and
/// 2 on usage errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sponge::cli
