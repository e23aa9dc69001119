#include "dualfgm/cli.hpp"

int main(int argc, char** argv) { return dualfgm::cli_main(argc, argv); }
