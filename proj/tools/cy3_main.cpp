#include "cy3/cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return cy3::run_cli(args, std::cin, std::cout, std::cerr);
}
