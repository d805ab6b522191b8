#ifndef CYCLICITY_SELFTEST_HPP
#define CYCLICITY_SELFTEST_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace cyc {

struct CriterionResult {
    int id;
    std::string name;
    bool pass;
    double seconds;
    std::string detail; // first failure, or empty
};

// The full acceptance suite; each criterion runs at its stated tolerance and
// carries its runtime budget.
std::vector<CriterionResult> run_acceptance();

// Prints one pass/fail line per criterion; returns true iff all pass.
bool print_acceptance(std::ostream& os);

} // namespace cyc

#endif
