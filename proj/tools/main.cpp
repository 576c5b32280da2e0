#include "estent/cli.hpp"

int main(int argc, char** argv) {
  return estent::run_cli(std::vector<std::string>(argv + 1, argv + argc));
}
