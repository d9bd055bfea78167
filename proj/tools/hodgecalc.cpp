#include <iostream>
#include <string>
#include <vector>

#include "hodge/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return hodge::cli::dispatch(args, std::cout, std::cerr);
}
