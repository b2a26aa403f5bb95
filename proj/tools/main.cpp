#include "afd/cli.hpp"

int main(int argc, char** argv) { return afd::cli_main(argc, argv); }
