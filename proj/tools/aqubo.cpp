#include <iostream>
#include <string>
#include <vector>

#include "aqubo/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return aqubo::cli::run(args, std::cout, std::cerr);
}
