#include "cli.hpp"

int main(int argc, char** argv) { return ualg::cli::cli_main(argc, argv); }
