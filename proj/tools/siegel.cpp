#include "siegel/cli.hpp"

int main(int argc, char** argv) { return siegel::cli::run(argc, argv); }
