#include <iostream>
#include <string>
#include <vector>

#include "dpplab/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return dpplab::dispatch(args, std::cout, std::cerr);
}
