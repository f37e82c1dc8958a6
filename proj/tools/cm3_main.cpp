#include <iostream>
#include <vector>

#include "cm3/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return cm3::run_cli(args, std::cout, std::cerr);
}
