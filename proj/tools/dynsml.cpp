#include <iostream>

#include "dynsml/cli/app.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return dynsml::cli::run(args, std::cout, std::cerr);
}
