#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "decorr/solver.hpp"

namespace decorr {
namespace cli {

// Command-line front end. args excludes the program name. Returns 0 on
// success, 1 on invalid input, 2 on output-write failure. All output for
// fixed flags is deterministic, byte for byte.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

// CSV rendering of a sweep: header eta,lambda,eta_tilde,param1,...; one row
// per grid cell in storage order; cells outside the physical region keep
// eta_tilde and the params empty. Numbers carry 12 significant digits.
std::string sweep_csv(const SweepResult& result);

// Plain-text PGM (P2, maxval 255): pixel = round(255 eta_tilde), invalid
// cells 0, rows run lambda descending and columns eta ascending.
std::string sweep_pgm(const SweepResult& result);

}  // namespace cli
}  // namespace decorr
