#include <iostream>
#include <string>
#include <vector>

#include "shades/cli.hpp"

int main(int argc, char** argv) {
  std::ios::sync_with_stdio(false);
  std::vector<std::string> args(argv + 1, argv + argc);
  return shades::run_cli(args, std::cout, std::cerr);
}
