#include <unistd.h>

#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "cli/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  digitbin::cli::Terminal term;
  term.stdout_is_tty = isatty(STDOUT_FILENO) != 0;
  term.color = term.stdout_is_tty && std::getenv("NO_COLOR") == nullptr;
  return digitbin::cli::run(args, std::cout, std::cerr, term);
}
