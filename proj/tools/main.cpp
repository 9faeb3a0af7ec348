#include "mixagg/cli.hpp"

int main(int argc, char** argv) { return mixagg::cli::main(argc, argv); }
