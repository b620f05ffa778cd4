#include "kgy/cli.hpp"

int main(int argc, char** argv) { return kgy::run_cli(argc, argv); }
