#include "netgeom/cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
    return netgeom::run_cli(argc, argv, std::cout, std::cerr);
}
