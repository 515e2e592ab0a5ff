#include <iostream>

#include "fpaut/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return fpaut::cli::run(args, std::cout, std::cerr);
}
