#include "germ/cli/commands.hpp"

int main(int argc, char** argv) { return germ::cli::run(argc, argv); }
