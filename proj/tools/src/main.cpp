#include <cstdlib>
#include <iostream>

#include "tamagawa_cli/app.hpp"

#ifndef TAMAGAWA_DEFAULT_FIXTURES
#define TAMAGAWA_DEFAULT_FIXTURES ""
#endif

int main(int argc, char** argv) {
  tamagawa::cli::Environment env;
  if (const char* f = std::getenv("TAMAGAWA_FIXTURES")) env.fixtures_env = f;
  env.default_fixtures = TAMAGAWA_DEFAULT_FIXTURES;
  return tamagawa::cli::run(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr, env);
}
