#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace occ::cli {

//! Runs one `occ` invocation. Returns the process exit status: 0 on success,
//! 1 on a runtime failure, anything else for usage errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace occ::cli
