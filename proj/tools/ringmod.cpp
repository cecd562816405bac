#include "ringmod/cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
    return ringmod::cli::main_entry(argc, argv, std::cout, std::cerr);
}
