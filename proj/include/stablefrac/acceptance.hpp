#ifndef STABLEFRAC_ACCEPTANCE_HPP
#define STABLEFRAC_ACCEPTANCE_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace stablefrac::acceptance {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
};

struct Options {
    unsigned seed = 0;
    // trims the two sampled suites (oracle + equivalence) for quick runs
    bool quick = false;
};

std::vector<CriterionResult> run_all(const Options& opt);

// one line per criterion; returns the number of failures
int report(std::ostream& os, const std::vector<CriterionResult>& results);

} // namespace stablefrac::acceptance

#endif
