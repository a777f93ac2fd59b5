#ifndef STABLEFRAC_TRANSFER_HPP
#define STABLEFRAC_TRANSFER_HPP

#include "stablefrac/integrability.hpp"
#include "stablefrac/localmodel.hpp"

namespace stablefrac {

// Cayley transfer centered at the torus point (1,1):
//   (x,y) -> (z,w) = ((1+ix)/(1-ix), (1+iy)/(1-iy))
// half_plane(x,y) = (1-ix)^n (1-iy)^m P(z(x), w(y)) exactly, where (n,m) is
// the bidegree; the cleared factors do not vanish at (0,0).
struct TransferResult {
    BiPoly half_plane;
    int deg_z = 0, deg_w = 0;
    bool vanishes_at_center = true;  // P(1,1) == 0
};

TransferResult torus_to_halfplane(const BiPoly& disk_poly);

struct DiskAnalysis {
    TransferResult p_transfer, q_transfer;
    Extraction extraction;
    MembershipReport report;
};

// Transfer both polynomials, extract the local model of the transferred
// denominator, and run the membership test on the transferred numerator.
DiskAnalysis analyze_disk(const BiPoly& p_disk, const BiPoly& q_disk, const Rat& p);

} // namespace stablefrac

#endif
