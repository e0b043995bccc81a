#include <iostream>
#include <string>
#include <vector>

#include "picky/report.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return picky::run_cli(args, std::cout, std::cerr);
}
