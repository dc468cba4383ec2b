#include "coolsched/cli.hpp"

int main(int argc, char** argv) { return coolsched::run_cli(argc, argv); }
