#ifndef STABLEFRAC_QUOTIENT_HPP
#define STABLEFRAC_QUOTIENT_HPP

#include <optional>
#include <vector>

#include "stablefrac/branches.hpp"

namespace stablefrac {

// Basis data for C{x,y}/(P, reflect P): elements x^i F_k, 0 <= i < m_k, with
// F_k = (A+tB)/prod_{j<=k}(y-a_j) for branches arranged in a chosen order.
template <class K>
struct QuotientBasisT {
    std::vector<XSeries<K>> a;                 // branch series, position order
    std::vector<YSeriesPoly<GComplex<K>>> f;   // f[pos] = prod_{j>pos}(y-a_j)
};

struct QuotientBasis {
    Rat t;
    int trunc = 0;
    bool numeric = false;
    std::vector<int> datum_order;  // position -> original datum index
    std::vector<int> m_k;          // per position; sum = intersection multiplicity
    QuotientBasisT<Rat> exact;
    QuotientBasisT<Ball> ball;
};

// Coordinates c_k(x) with Q = sum_k c_k F_k modulo (P, reflect P),
// deg c_k < m_k; beta/f0 are the division transcript used for verification.
struct CoordinateVector {
    bool numeric = false;
    std::vector<Poly1<GaussianRational>> exact;
    std::vector<Poly1<BallComplex>> ball;
    std::vector<std::optional<int>> orders;  // per position; nullopt = c_k == 0
};

QuotientBasis quotient_basis(const LocalModel& m, const BranchSystem& sys,
                             const ProperTCertificate& cert);

QuotientBasis quotient_basis_ordered(const LocalModel& m, const BranchSystem& sys,
                                     const ProperTCertificate& cert,
                                     const std::vector<int>& datum_order);

CoordinateVector reduce_mod_ideal(const BiPoly& q, const LocalModel& m,
                                  const QuotientBasis& basis);

// Confirms Q - sum c_k F_k recombines from the division transcript into
// (A+tB, B) = (P, reflect P) at truncation.
bool verify_reduction(const BiPoly& q, const LocalModel& m, const QuotientBasis& basis,
                      int slack = 2);

// floor((2L+1)(1 - 1/p)); the infinity case stabilizes at p = K+1.
int lk_of_p(int l, const Rat& p);

// The recursive relabeling making the per-coefficient vanishing conditions
// equivalent to membership; returns position -> original datum index.
std::vector<int> relabel_for_p(const LocalModel& m, const std::optional<Rat>& p);

struct IntegrabilityBasis {
    std::optional<Rat> p;          // nullopt = infinity
    std::vector<int> order;        // position -> original datum
    std::vector<int> lower;        // l_k: c_k must vanish to this order
    std::vector<int> upper;        // m_k
    int count = 0;                 // = dim I^p/(P, reflect P)
    QuotientBasis qb;
};

IntegrabilityBasis integrability_basis(const LocalModel& m, const std::optional<Rat>& p,
                                       int trunc = 0, unsigned seed = 0);

bool membership_via_coordinates(const BiPoly& q, const LocalModel& m, const Rat& p,
                                int trunc = 0, unsigned seed = 0);

} // namespace stablefrac

#endif
