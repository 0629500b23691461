#include <iostream>

#include "chartdist/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return chartdist::cli::run(args, std::cout, std::cerr);
}
