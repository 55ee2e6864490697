#include "ghl/cli.hpp"

int main(int argc, char** argv) { return ghl::cli_main(argc, argv); }
