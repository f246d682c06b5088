#include <iostream>
#include <string>
#include <vector>

#include "mo/cli/app.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return mo::cli::run(args, std::cout, std::cerr);
}
