#include "gin/cli.hpp"

int main(int argc, char** argv) { return gin::cli::run(argc, argv); }
