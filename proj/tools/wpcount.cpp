#include <iostream>

#include "wpcount/cli.hpp"

int main(int argc, char** argv) { return wpcount::run(argc, argv, std::cout, std::cerr); }
