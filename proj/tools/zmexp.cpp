#include "zmexp/cli.hpp"

int main(int argc, char** argv) { return zmexp::cli::run(argc, argv); }
