#include <iostream>

#include "stochorder/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return stochorder::cli::run(args, std::cout, std::cerr);
}
