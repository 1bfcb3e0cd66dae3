#include "sphsplit/cli.hpp"

int main(int argc, char** argv) { return sphsplit::run_cli(argc, argv); }
