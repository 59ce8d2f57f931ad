#include "bochnerlab/cli.hpp"

int main(int argc, char** argv) { return bochnerlab::cli::main_entry(argc, argv); }
