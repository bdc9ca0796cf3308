#include "kspave/cli.hpp"

int main(int argc, char** argv) { return kspave::cli::main(argc, argv); }
