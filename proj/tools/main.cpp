#include "topicdx/cli.hpp"

int main(int argc, char** argv) { return topicdx::cli::run(argc, argv); }
