#ifndef STABLEFRAC_PUISEUX_HPP
#define STABLEFRAC_PUISEUX_HPP

#include <vector>

#include "stablefrac/series.hpp"

namespace stablefrac {

// One branch y = tail(x) of a bivariate polynomial through (0,0), expanded to
// a fixed truncation.  multiplicity > 1 only when a cluster could not be
// separated within the exponent budget (the branches then agree mod x^N).
template <class K>
struct ExpandedBranch {
    XSeries<GComplex<K>> tail;
    int multiplicity = 1;
};

// Branch datum found by extraction: the branch is y = -(q(x) + x^{2L} psi(..))
// with Im psi(0) > 0; psi0 records that leading tail coefficient.
template <class K>
struct DatumBranch {
    Poly1<K> q;
    int L = 1;
    GComplex<K> psi0;
    int multiplicity = 1;
};

// Results carry either exact series (all Newton-polygon residual roots were
// Gaussian rational) or certified high-precision enclosures.
struct ExpandOutcome {
    bool numeric = false;
    std::vector<ExpandedBranch<Rat>> exact;
    std::vector<ExpandedBranch<Ball>> ball;
    size_t count() const { return numeric ? ball.size() : exact.size(); }
};

struct ExtractOutcome {
    bool numeric = false;
    std::vector<DatumBranch<Rat>> exact;
    std::vector<DatumBranch<Ball>> ball;
};

// Expands every branch of W with y -> 0 as x -> 0 to order N (integer
// exponents only; a fractional polygon slope is rejected, which Theorem-level
// hypotheses guarantee cannot happen for the inputs we accept).
ExpandOutcome expand_branches(const BiPoly& W, int N);

// Runs the same expansion but stops each branch at its first certified
// non-real coefficient, yielding the local-model data.  Enforces that the
// stopping exponent is even and the coefficient lies in the lower half plane.
ExtractOutcome extract_branch_data(const BiPoly& W, int exponent_cap);

} // namespace stablefrac

#endif
