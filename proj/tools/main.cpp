#include <iostream>
#include <string>
#include <vector>

#include "ccalc/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return ccalc::cli::run(args, std::cout, std::cerr);
}
