#include <cstring>
#include <iostream>

#include "stablefrac/acceptance.hpp"

int main(int argc, char** argv) {
    stablefrac::acceptance::Options opt;
    for (int k = 1; k < argc; ++k) {
        if (!std::strcmp(argv[k], "--quick")) opt.quick = true;
        if (!std::strcmp(argv[k], "--seed") && k + 1 < argc)
            opt.seed = static_cast<unsigned>(std::atoi(argv[k + 1]));
    }
    auto results = stablefrac::acceptance::run_all(opt);
    int failures = stablefrac::acceptance::report(std::cout, results);
    if (failures) std::cout << failures << " criterion(s) failed\n";
    return failures;
}
