#include <iostream>
#include <string>
#include <vector>

#include "heraldnet/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return heraldnet::run_cli(args, std::cout, std::cerr);
}
