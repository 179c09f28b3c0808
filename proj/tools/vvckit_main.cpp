#include <iostream>

#include "vvckit/cli.hpp"

int main(int argc, char** argv) { return vvckit::run_cli(argc, argv, std::cout, std::cerr); }
