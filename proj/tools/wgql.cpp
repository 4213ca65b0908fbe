#include "wgql/cli.hpp"

int main(int argc, char** argv) { return wgql::cli::main_entry(argc, argv); }
