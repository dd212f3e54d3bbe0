#include <iostream>
#include <vector>

#include "aspt/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return aspt::run_cli(args, std::cin, std::cout, std::cerr);
}
