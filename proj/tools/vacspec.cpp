#include <iostream>

#include "vacspec_cli.hpp"

int main(int argc, char** argv) { return vacspec::cli::run(argc, argv, std::cout, std::cerr); }
