// hoca.cc -- command-line entry point

#include "hoca/cli.hh"

#include <iostream>

int main(int argc, char** argv) { return hoca::run_cli(argc, argv, std::cout, std::cerr); }
