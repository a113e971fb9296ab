#include "cli.hpp"

int main(int argc, char** argv) { return hyperalg::cli::run(argc, argv); }
