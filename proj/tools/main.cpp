#include <iostream>
#include <string>
#include <vector>

#include "lineforward/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return lineforward::run_cli(std::move(args), std::cout, std::cerr);
}
