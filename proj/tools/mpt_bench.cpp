#include "mpt/cli.hpp"

int main(int argc, char** argv) { return mpt::cli_main(argc, argv); }
