#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace recouple::cli {

enum Exit { Ok = 0, CheckFailed = 1, Usage = 2, InputError = 3 };

/// Runs one command; args exclude the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace recouple::cli
