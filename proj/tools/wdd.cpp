#include "wdd/cli/commands.hpp"

int main(int argc, char** argv) { return wdd::cli::run(argc, argv); }
