#include <iostream>

#include "sos/cli.hpp"

int main(int argc, char** argv) { return sos::sos_main(argc, argv, std::cout, std::cerr); }
