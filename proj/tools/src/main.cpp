#include "fuchsdim_cli/cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
    return fuchsdim::cli::run(argc, argv, std::cout, std::cerr);
}
