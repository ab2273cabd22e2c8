#include "entsim/cli.hpp"

int main(int argc, char** argv) { return entsim::cli_main(argc, argv); }
