#include "gyralab/cli.hpp"

int main(int argc, char** argv) { return gyralab::run(argc, argv); }
