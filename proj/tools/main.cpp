#include <iostream>
#include <string>
#include <vector>

#include "cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  degen::cli::Result r = degen::cli::run(args);
  std::cout << r.out;
  std::cerr << r.err;
  return r.code;
}
