#include "rsl/cli.hpp"

int main(int argc, char** argv) {
  return rsl::cli::run(std::vector<std::string>(argv + 1, argv + argc));
}
