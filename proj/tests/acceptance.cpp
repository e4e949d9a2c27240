// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <iostream>

#include "liecr/acceptance.hpp"

int main() { return liecr::acceptance::run_all(std::cout) ? 0 : 1; }
