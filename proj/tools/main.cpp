#include "opjhcpp/cli.hpp"

int main(int argc, char** argv) { return opjhcpp::run_cli(argc, argv); }
