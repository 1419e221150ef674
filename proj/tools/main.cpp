#include <iostream>
#include <string>
#include <vector>

#include "pforms/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return pforms::cli::run(std::move(args), std::cout, std::cerr);
}
