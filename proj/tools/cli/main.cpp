#include <cstdlib>
#include <iostream>

#include "kreinlab_cli/commands.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  kreinlab::cli::Environment env;
  if (const char* tol = std::getenv("KREINLAB_TOL")) env.tol = tol;
  return kreinlab::cli::run(args, std::cout, std::cerr, env);
}
