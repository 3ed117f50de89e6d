#include <iostream>

#include "logbal/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return logbal::cli::run(args, std::cout, std::cerr);
}
