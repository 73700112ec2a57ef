#include <iostream>
#include <string>
#include <vector>

#include "daylit/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return daylit::cli::run(args, std::cout, std::cerr);
}
