#include <iostream>
#include <string>
#include <vector>

#include "quivlat/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return quivlat::cli::run(args, std::cout, std::cerr);
}
