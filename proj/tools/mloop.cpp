#include <iostream>
#include <string>
#include <vector>

#include "mloop/commands.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return mloop::run_command(args, std::cout);
}
