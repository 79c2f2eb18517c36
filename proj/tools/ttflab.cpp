#include "ttf/cli.hpp"

int main(int argc, char** argv) { return ttf::run_cli(argc, argv); }
