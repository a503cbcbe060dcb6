#include <iostream>

#include "kurepa/cli.hpp"

int main(int argc, char** argv) {
    return kurepa::cli::run(argc, argv, std::cout, std::cerr);
}
