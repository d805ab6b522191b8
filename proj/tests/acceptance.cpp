#include <iostream>

#include "cyclicity/selftest.hpp"

int main() { return cyc::print_acceptance(std::cout) ? 0 : 1; }
