#include <iostream>

#include "polyconduche/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return polyconduche::run_cli(args, std::cout, std::cerr);
}
