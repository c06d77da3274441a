#include "dsrkit/cli.hpp"

int main(int argc, char** argv) { return dsrkit::run_cli(argc, argv); }
