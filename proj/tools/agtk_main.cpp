#include "agtk/cli.hpp"

int main(int argc, char** argv) { return agtk::cli::run(argc, argv); }
