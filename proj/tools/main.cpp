#include "gapbp/cli.hpp"

int main(int argc, char** argv) { return gapbp::run_cli(argc, argv); }
