#include "hconvex_cli/cli.hpp"

int main(int argc, char** argv) { return hconvex::cli::main_entry(argc, argv); }
