#include "ima_cli/run.hpp"

int main(int argc, char** argv) { return ima::cli::main_entry(argc, argv); }
