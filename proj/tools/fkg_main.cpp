#include "fkg/cli.hpp"

int main(int argc, char** argv) { return fkg::cli::run_command(argc, argv); }
