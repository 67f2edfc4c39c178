#include <iostream>

#include "resolvent/cli.hpp"

int main(int argc, char** argv) {
    return resolvent::cli::run_cli(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
