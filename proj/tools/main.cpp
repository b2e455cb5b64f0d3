#include <iostream>
#include <string>
#include <vector>

#include "qrflip/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return qrflip::cli::run(args, std::cout, std::cerr);
}
