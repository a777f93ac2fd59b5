#ifndef STABLEFRAC_BRANCHES_HPP
#define STABLEFRAC_BRANCHES_HPP

#include <optional>
#include <string>
#include <vector>

#include "stablefrac/integrability.hpp"
#include "stablefrac/localmodel.hpp"
#include "stablefrac/series.hpp"

namespace stablefrac {

// The smooth real branches y = a_j(x) of A + tB, exact or high-precision.
struct BranchSystem {
    Rat t;
    int trunc = 0;
    bool numeric = false;
    std::vector<XSeries<Rat>> exact;
    std::vector<XSeries<Ball>> ball;

    size_t count() const { return numeric ? ball.size() : exact.size(); }
};

struct ProperTCertificate {
    Rat t;
    bool numeric = false;
    std::vector<int> matched;                // branch index -> datum index
    std::vector<std::vector<int>> contacts;  // pairwise branch contact orders
};

struct ProperCheck {
    bool proper = false;
    ProperTCertificate cert;
    std::string reason;     // set when not proper
    int bad_i = -1, bad_j = -1;
};

struct BvanishReport {
    bool ok = false;
    std::vector<int> b_orders;      // Ord B(x, a_j), expected sum_i O_ij
    std::vector<int> dy_orders;     // Ord (A_y+tB_y)(x, a_j), expected sum_{i!=j}
    std::vector<int> expected_b, expected_dy;
};

// Default truncation: all orders in the formulas are bounded by the
// intersection multiplicity, so 2*IM + 4 leaves certification room.
template <class K>
int default_truncation(const LocalModelT<K>& m) {
    return 2 * intersection_multiplicity(m) + 4;
}

// Branch series of A + tB for the model polynomial.
BranchSystem branch_series(const LocalModel& m, const Rat& t, int trunc);

// Matches branches to data and verifies every pairwise contact equals O_ij.
ProperCheck is_proper(const LocalModel& m, const BranchSystem& sys);

ProperCheck is_proper(const LocalModel& m, const Rat& t, int trunc);

// Order verification along branches for proper t (and for any t whose
// matching certifies, e.g. t = 0 on models where every t works).
BvanishReport verify_bvanish(const LocalModel& m, const BranchSystem& sys,
                             const ProperTCertificate& cert);

struct ProperTResult {
    Rat t;
    ProperTCertificate cert;
    BranchSystem sys;
};

// Samples 1, -1, 2, -2, ... then seeded rationals until a proper t certifies.
ProperTResult find_proper_t(const LocalModel& m, int trunc, unsigned seed = 0,
                            int max_attempts = 32);

// Membership via branch composition orders (the L^p characterization along
// branches); must agree with is_in_Lp.
bool membership_via_branches(const BiPoly& Q, const LocalModel& m, const Rat& p,
                             const BranchSystem& sys, const ProperTCertificate& cert);

} // namespace stablefrac

#endif
