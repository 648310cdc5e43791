#include <iostream>
#include <string>
#include <vector>

#include "hyperthresh_cli/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return hyperthresh::cli::run(args, std::cout, std::cerr);
}
