#include <iostream>

#include "depthdegen/app.hpp"

int main(int argc, char** argv) {
    return depthdegen::cli::run_cli(argc, argv, std::cout, std::cerr);
}
