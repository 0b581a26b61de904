#include <iostream>

#include "nilcert/cli.hpp"

int main(int argc, char** argv) { return nilcert::run_cli(argc, argv, std::cout, std::cerr); }
