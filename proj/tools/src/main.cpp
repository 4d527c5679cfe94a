#include <iostream>
#include <string>
#include <vector>

#include "trachtenberg/cli/commands.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return trachtenberg::cli::execute_command(args, std::cin, std::cout, std::cerr);
}
