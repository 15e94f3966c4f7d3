#include "dmdl/cli.hpp"

int main(int argc, char** argv) { return dmdl::cli_dispatch(argc, argv); }
