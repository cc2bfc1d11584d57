#include "mopt/cli.hpp"

int main(int argc, char** argv) { return mopt::cli::cli_main(argc, argv); }
