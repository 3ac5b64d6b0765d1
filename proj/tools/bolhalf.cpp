#include "bolhalf/cli.hpp"

int main(int argc, char** argv) { return bolhalf::run_cli(argc, argv); }
