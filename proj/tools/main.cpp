#include <iostream>

#include "qdc/cli.hpp"

int main(int argc, char** argv) { return qdc::cli_main(argc, argv, std::cout, std::cerr); }
