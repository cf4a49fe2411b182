#include <iostream>
#include <string>
#include <vector>

#include "cvsep_cli/commands.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return cvsep::cli::run(args, std::cout, std::cerr);
}
