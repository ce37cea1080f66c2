#include "sixdp/cli.hpp"

int main(int argc, char** argv) { return sixdp::cli_main(argc, argv); }
