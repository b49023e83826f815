#include "tilingobs/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return tilingobs::cli::cli_dispatch(args, std::cout, std::cerr);
}
