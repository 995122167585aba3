#include "cli.hpp"

int main(int argc, char** argv) { return twolayer::cli::run_cli(argc, argv); }
