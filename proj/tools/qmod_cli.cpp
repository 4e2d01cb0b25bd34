#include <iostream>

#include "qmod/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return qmod::cli::run(args, std::cout, std::cerr);
}
