#pragma once

#include <string>
#include <vector>

#include "kron/json_io.hpp"

namespace kron::cli {

enum ExitCode { kOk = 0, kUsage = 2, kBudget = 3 };

struct CommandResult {
  bool ok = true;
  Json payload;       // always carries "status": "ok" | "error"
  int exit_code = kOk;
  std::string text;   // help output, printed instead of the payload when set
};

// args excludes the program name. File arguments may be a path, "-" for
// stdin, or inline JSON starting with '{' or '['.
CommandResult run(const std::vector<std::string>& args);

}  // namespace kron::cli
