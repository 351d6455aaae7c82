#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace shedkit::cli {

enum ExitCode { kOk = 0, kCheckFailed = 1, kUsage = 2, kResource = 3 };

/// Runs the shedkit command line; args[0] is the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace shedkit::cli
