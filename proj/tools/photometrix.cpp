#include "photometrix/cli/app.hpp"

#include <iostream>

int main(int argc, char** argv) {
  return photometrix::cli::run({argv + 1, argv + argc}, std::cout, std::cerr);
}
