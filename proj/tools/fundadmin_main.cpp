#include <iostream>
#include <string>
#include <vector>

#include "fundadmin/cli.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv + 1, argv + argc);
  return fundadmin::run_cli(args, std::cout, std::cerr);
}
