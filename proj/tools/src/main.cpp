#include <iostream>

#include "zipshift_cli/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return zipshift::cli::run_cli(args, std::cout, std::cerr);
}
