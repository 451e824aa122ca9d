#include "pdqls/cli.hpp"

int main(int argc, char** argv) { return pdqls::cli::run(argc, argv); }
