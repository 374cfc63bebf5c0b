#include <iostream>
#include <string>
#include <vector>

#include "gmtforms/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return gmtforms::run_cli(args, std::cout, std::cerr);
}
