#include <iostream>
#include <string>
#include <vector>

#include "arbpack/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv, argv + argc);
    return arbpack::cli::run_command(args, std::cout, std::cerr, std::cin);
}
