#include "sturmlab/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return sturm::cli::run(argc, argv, std::cout, std::cerr); }
