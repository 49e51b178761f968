#include <iostream>

#include "homeuler/cli.hpp"

int main(int argc, char** argv) { return homeuler::cli::dispatch(argc, argv, std::cout, std::cerr); }
