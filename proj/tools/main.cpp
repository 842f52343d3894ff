#include <iostream>

#include "cli.hpp"

int main(int argc, char** argv) {
    return causal_ssd::cli::run(argc, argv, std::cout, std::cerr);
}
