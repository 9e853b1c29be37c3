#include "ttc/bench.hpp"

int main(int argc, char** argv) { return ttc::bench::cli_main(argc, argv); }
