#include <iostream>
#include <string>
#include <vector>

#include "stabchamber/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return stabchamber::cli::run(args, std::cout, std::cerr);
}
