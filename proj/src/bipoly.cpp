#include "stablefrac/bipoly.hpp"

namespace stablefrac {

namespace {

using C = GaussianRational;
using PolyC = Poly1<C>;
using YPolyVec = std::vector<PolyC>;

int ydeg(const YPolyVec& f) {
    for (size_t k = f.size(); k-- > 0;)
        if (!f[k].is_zero()) return static_cast<int>(k);
    return -1;
}

PolyC content(const YPolyVec& f) {
    PolyC g;
    for (const auto& p : f)
        if (!p.is_zero()) g = poly_gcd(g, p);
    return g;
}

YPolyVec divide_content(const YPolyVec& f, const PolyC& cont) {
    YPolyVec r(f.size());
    for (size_t k = 0; k < f.size(); ++k) {
        if (f[k].is_zero()) continue;
        auto [q, rem] = divmod(f[k], cont);
        if (!rem.is_zero()) throw Error("content division not exact");
        r[k] = q;
    }
    return r;
}

// Pseudo-remainder of f by g in y; a scalar multiple of the true remainder,
// which is all the primitive remainder sequence needs.
YPolyVec pseudo_rem(YPolyVec r, const YPolyVec& g) {
    int dg = ydeg(g);
    const PolyC& lc = g[static_cast<size_t>(dg)];
    while (true) {
        int dr = ydeg(r);
        if (dr < dg) break;
        PolyC top = r[static_cast<size_t>(dr)];
        for (auto& p : r) p = p * lc;
        for (size_t k = 0; k < g.size(); ++k) {
            if (g[k].is_zero()) continue;
            size_t idx = k + static_cast<size_t>(dr - dg);
            r[idx] = r[idx] - top * g[k];
        }
        if (ydeg(r) >= dr) throw Error("pseudo-division failed to reduce degree");
    }
    return r;
}

YPolyVec primitive(const YPolyVec& f) {
    PolyC cont = content(f);
    if (cont.is_zero()) return f;
    return divide_content(f, cont);
}

} // namespace

BiPoly bipoly_gcd(const BiPoly& a, const BiPoly& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;

    YPolyVec f = a.as_y_polys(), g = b.as_y_polys();
    PolyC ca = content(f), cb = content(g);
    PolyC cont_gcd = poly_gcd(ca, cb);

    YPolyVec u = primitive(f), v = primitive(g);
    if (ydeg(u) < ydeg(v)) std::swap(u, v);
    while (ydeg(v) >= 0) {
        YPolyVec r = pseudo_rem(u, v);
        u = std::move(v);
        v = primitive(r);
        if (ydeg(v) > ydeg(u)) throw Error("gcd remainder sequence diverged");
    }
    YPolyVec prim = primitive(u);

    // normalize: leading y-coefficient monic in x
    int d = ydeg(prim);
    if (d >= 0 && !prim[static_cast<size_t>(d)].is_zero()) {
        C lead = prim[static_cast<size_t>(d)].c.back();
        for (auto& p : prim)
            for (auto& cc : p.c) cc = cc / lead;
    }

    BiPoly result = BiPoly::from_y_polys(prim) * BiPoly::from_y_polys({cont_gcd});
    return result;
}

std::string bipoly_str(const BiPoly& p) { return p.str(); }

} // namespace stablefrac
