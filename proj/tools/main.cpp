#include <iostream>

#include "qpurity/cli.hpp"

int main(int argc, char** argv) {
    return qpurity::run_cli({argv + 1, argv + argc}, std::cout, std::cerr);
}
