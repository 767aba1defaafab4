#include "cli.hpp"

int main(int argc, char** argv) { return u1braid::cli::run(argc, argv); }
