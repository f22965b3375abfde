#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace mogami::cli {

/// Runs one command line (without the program name). Output is key=value
/// lines, or one JSON object with `--json`. Returns 0 on success, 1 on a
/// domain error (`error=<token>` on `err`), 2 on a usage error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace mogami::cli
