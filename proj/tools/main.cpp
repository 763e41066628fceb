#include "concretix/driver/cli.hpp"

int main(int argc, char** argv) { return concretix::driver::cli_main(argc, argv); }
