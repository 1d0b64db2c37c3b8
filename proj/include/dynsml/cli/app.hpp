#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "dynsml/error.hpp"

namespace dynsml::cli {

// Process exit codes.
enum Exit : int {
  kOk = 0,
  kUsage = 1,
  kParse = 2,
  kValidation = 3,
  kInconclusive = 4,
  kCertificate = 5,
};

int exit_code_for(ErrorCode code);

// Runs the command line (args[0] is the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dynsml::cli
