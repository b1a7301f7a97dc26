#include <iostream>
#include <string>
#include <vector>

#include "bkc/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return bkc::cli::run(args, std::cout, std::cerr);
}
