#include <iostream>

#include "ivt_cli/cli_app.hpp"

int main(int argc, char** argv) {
  return ivt::cli::run_cli({argv + 1, argv + argc}, std::cout, std::cerr);
}
