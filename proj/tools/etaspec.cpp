#include "etaspec/cli.hpp"

int main(int argc, char** argv) { return etaspec::cli::run(argc, argv); }
