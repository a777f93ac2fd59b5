#include "stablefrac/transfer.hpp"

namespace stablefrac {

namespace {

using GQ = GaussianRational;

std::vector<BiPoly> power_table(const BiPoly& base, int up_to) {
    std::vector<BiPoly> t(static_cast<size_t>(up_to) + 1);
    t[0] = BiPoly::constant(1);
    for (int k = 1; k <= up_to; ++k) t[static_cast<size_t>(k)] = t[static_cast<size_t>(k - 1)] * base;
    return t;
}

} // namespace

TransferResult torus_to_halfplane(const BiPoly& disk_poly) {
    TransferResult out;
    if (disk_poly.is_zero()) {
        out.half_plane = disk_poly;
        out.vanishes_at_center = true;
        return out;
    }
    int n = std::max(disk_poly.deg_x(), 0);
    int m = std::max(disk_poly.deg_y(), 0);
    out.deg_z = n;
    out.deg_w = m;

    GQ one_at_center = disk_poly.eval(GQ(Rat(1)), GQ(Rat(1)));
    out.vanishes_at_center = zero_status(one_at_center) == ZeroStatus::Zero;

    // z^a -> (1+ix)^a (1-ix)^(n-a), w^b -> (1+iy)^b (1-iy)^(m-b)
    BiPoly xp = BiPoly::var_x(), yp = BiPoly::var_y();
    GQ i = GQ::i_unit();
    BiPoly one = BiPoly::constant(1);
    auto plus_x = one + xp * i, minus_x = one - xp * i;
    auto plus_y = one + yp * i, minus_y = one - yp * i;
    auto px = power_table(plus_x, n), mx = power_table(minus_x, n);
    auto py = power_table(plus_y, m), my = power_table(minus_y, m);

    BiPoly acc;
    for (const auto& [k, c] : disk_poly.terms) {
        BiPoly term = px[static_cast<size_t>(k.first)] * mx[static_cast<size_t>(n - k.first)] *
                      py[static_cast<size_t>(k.second)] * my[static_cast<size_t>(m - k.second)];
        acc = acc + term * c;
    }
    out.half_plane = acc;
    return out;
}

DiskAnalysis analyze_disk(const BiPoly& p_disk, const BiPoly& q_disk, const Rat& p) {
    DiskAnalysis out;
    out.p_transfer = torus_to_halfplane(p_disk);
    out.q_transfer = torus_to_halfplane(q_disk);
    out.extraction = extract_local_model(out.p_transfer.half_plane);
    if (!out.extraction.numeric) {
        out.report = is_in_Lp(out.q_transfer.half_plane, out.extraction.model, p);
    } else {
        out.report = is_in_Lp(promote(out.q_transfer.half_plane),
                              out.extraction.model_ball, p);
    }
    return out;
}

} // namespace stablefrac
