#include <iostream>

#include "omlkit/cli.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv + 1, argv + argc);
  const omlkit::RunResult r = omlkit::run_command_line(args);
  std::cout << r.out;
  std::cerr << r.err;
  return r.exit_code;
}
