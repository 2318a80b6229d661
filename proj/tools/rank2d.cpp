#include "rank2d/cli.hpp"

int main(int argc, char** argv) { return rank2d::cli::run(argc, argv); }
