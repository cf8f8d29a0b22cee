#include <iostream>

#include "cauchycorr/cli.hpp"

int main(int argc, char** argv) {
    return cauchycorr::cli::run_cli(argc, argv, std::cout, std::cerr);
}
