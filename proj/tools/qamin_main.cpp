#include "qam/io.hpp"

int main(int argc, char** argv) { return qam::cli_main(argc, argv); }
