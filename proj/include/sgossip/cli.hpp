#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace sgossip::cli {

enum ExitCode : int { kConverges = 0, kError = 1, kDiverges = 2, kUndecided = 3 };

/// Entry point shared by the executable and the tests. `args` excludes argv[0].
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sgossip::cli
