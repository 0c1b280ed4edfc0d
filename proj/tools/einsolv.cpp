#include "einsolv/cli.hpp"

int main(int argc, char** argv) { return einsolv::cli::main(argc, argv); }
