#include <iostream>

#include "sdlq_cli/commands.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return sdlq::cli::run(args, std::cout, std::cerr);
}
