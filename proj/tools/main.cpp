#include "commands.hpp"

int main(int argc, char** argv) { return fzw::cli::main_entry(argc, argv); }
