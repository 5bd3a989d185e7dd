#include <iostream>

#include "snd/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return snd::cli_main(args, std::cout, std::cerr);
}
