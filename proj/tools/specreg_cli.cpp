#include "specreg/cli.hpp"

int main(int argc, char** argv) { return specreg::cli_main(argc, argv); }
