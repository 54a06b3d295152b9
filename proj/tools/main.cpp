#include "srr/cli.hpp"

int main(int argc, char** argv) { return srr::run_cli(argc, argv); }
