#include <codeforest/cli.hpp>

#include <iostream>

int main(int argc, char** argv) {
    return codeforest::run_cli(argc, argv, std::cout, std::cerr);
}
