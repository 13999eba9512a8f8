#include "hyptimes/app/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return hyptimes::app::run_cli(argc, argv, std::cout, std::cerr); }
