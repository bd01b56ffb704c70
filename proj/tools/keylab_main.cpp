#include "keylab/cli.hpp"

int main(int argc, char** argv) { return keylab::harness::cli_main(argc, argv); }
