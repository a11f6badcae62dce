#pragma once

#include <iosfwd>

#include "codeweft/error.hpp"

namespace codeweft::cli {

enum ExitCode : int {
  kOk = 0,
  kPartialParse = 2,
  kUsage = 64,
  kData = 65,
  kIo = 66,
};

int exit_code_for(ErrorCode code);

// Runs `codeweft` with the given arguments (argv[0] is the program name).
int run(int argc, const char *const *argv, std::istream &in, std::ostream &out, std::ostream &err);

}  // namespace codeweft::cli
