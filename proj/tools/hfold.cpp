#include <iostream>
#include <string>
#include <vector>

#include "hfold/cli.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv + 1, argv + argc);
  return hfold::cli_main(args, std::cout, std::cerr);
}
