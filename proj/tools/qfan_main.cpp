#include <iostream>
#include <vector>

#include "qfan/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return qfan::run_cli(args, std::cout, std::cerr);
}
