#include <iostream>

#include "relaynet/cli.hpp"

int main(int argc, char** argv) { return relaynet::cli_main(argc, argv, std::cout, std::cerr); }
