#include <string>
#include <vector>

#include "rdd_eclat/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return rdd_eclat::run_cli(args);
}
