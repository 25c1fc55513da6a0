#include <iostream>
#include <string>
#include <vector>

#include "ridgelab/cli.hpp"

int main(int argc, char** argv) {
    const std::vector<std::string> args(argv, argv + argc);
    return ridgelab::cli::run(args, std::cout, std::cerr);
}
