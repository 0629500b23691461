#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace chartdist::cli {

enum ExitCode : int {
    kOk = 0,
    kUsage = 1,  // also "not bisimilar" for the bisim command
    kParse = 2,
    kType = 3,
    kRejected = 4,
    kBudget = 5,
};

/// Runs one command. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace chartdist::cli
