#include <iostream>
#include <vector>

#include "chernband/cli.hpp"

int main(int argc, char** argv) {
    return chernband::cli::run(std::vector<std::string>(argv + 1, argv + argc), std::cout,
                               std::cerr);
}
