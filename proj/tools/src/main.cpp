#include <string>
#include <vector>

#include "pxp_cli/run.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return pxp::cli::main_entry(args);
}
