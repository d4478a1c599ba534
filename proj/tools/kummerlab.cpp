#include "kummerlab/cli.hpp"

int main(int argc, char** argv) { return kummerlab::cli::run(argc, argv); }
