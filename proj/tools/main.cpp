#include "xprod/cli.hpp"

int main(int argc, char** argv) { return xprod::cli::run(argc, argv); }
