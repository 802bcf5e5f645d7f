#include "tmcf/cli.hpp"

int main(int argc, char** argv) { return tmcf::cli::run(argc, argv); }
