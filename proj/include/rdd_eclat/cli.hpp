#pragma once

#include <string>
#include <vector>

namespace rdd_eclat {

enum ExitCode : int {
  kExitOk = 0,
  kExitConfig = 1,
  kExitDataset = 2,
  kExitInternal = 3,
};

/// Entry point of the benchmark CLI. `args` excludes the program name.
/// Diagnostics go to standard error.
int run_cli(const std::vector<std::string>& args);

}  // namespace rdd_eclat
