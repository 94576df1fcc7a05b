#include "cli.hpp"

int main(int argc, char** argv) { return tessim::cli::run(argc, argv); }
