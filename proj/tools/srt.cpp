#include <iostream>

#include "srt/cli.hpp"

int main(int argc, char** argv) { return srt::cli::run(argc, argv, std::cout, std::cerr); }
