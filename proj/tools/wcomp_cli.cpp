#include "wcomp/cli.hpp"

int main(int argc, char** argv) { return wcomp::cli::run(argc, argv, std::cout, std::cerr); }
