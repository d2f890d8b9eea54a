#include <iostream>

#include "aqc_cli/app.hpp"

int main(int argc, char** argv) { return aqc::cli::run_cli(argc, argv, std::cout, std::cerr); }
