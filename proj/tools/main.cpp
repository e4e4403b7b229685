#include <iostream>
#include <string>
#include <vector>

#include "exsym/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return exsym::cli::run(args, std::cout, std::cerr);
}
