#include <string>
#include <vector>

#include "qgf/config.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return qgf::cli::run(args);
}
