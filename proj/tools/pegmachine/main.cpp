#include <iostream>

#include "pegmachine/cli/app.hpp"

int main(int argc, char** argv) { return pegmachine::cli::run_app(argc, argv, std::cout, std::cerr); }
