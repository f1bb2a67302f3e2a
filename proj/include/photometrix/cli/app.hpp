#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace photometrix::cli {

enum ExitCode : int { kOk = 0, kConfigError = 2, kInfeasible = 3 };

/// Entry point behind the photometrix executable. args excludes argv[0].
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

std::string version();

}  // namespace photometrix::cli
