#include "ramanforge/dataio/cli.hpp"

int main(int argc, char** argv) { return ramanforge::run_cli(argc, argv); }
