#include "cli.hpp"

int main(int argc, char** argv) { return oddweird::cli::run(argc, argv); }
