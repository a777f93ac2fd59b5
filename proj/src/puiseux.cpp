#include "stablefrac/puiseux.hpp"

#include <algorithm>
#include <complex>
#include <optional>
#include <vector>

namespace stablefrac {

namespace {

using GQ = GaussianRational;
using BC = BallComplex;

// ---------------------------------------------------------------------------
// numeric helpers
// ---------------------------------------------------------------------------

struct MpC {
    HpFloat re, im;
    MpC() : re(0), im(0) {}
    MpC(HpFloat r, HpFloat i) : re(std::move(r)), im(std::move(i)) {}
    friend MpC operator+(const MpC& a, const MpC& b) { return {a.re + b.re, a.im + b.im}; }
    friend MpC operator-(const MpC& a, const MpC& b) { return {a.re - b.re, a.im - b.im}; }
    friend MpC operator*(const MpC& a, const MpC& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend MpC operator/(const MpC& a, const MpC& b) {
        HpFloat n = b.re * b.re + b.im * b.im;
        return {(a.re * b.re + a.im * b.im) / n, (a.im * b.re - a.re * b.im) / n};
    }
    HpFloat abs2() const { return re * re + im * im; }
};

MpC to_mpc(const GQ& z) {
    return {HpFloat(z.re.get_num().get_str()) / HpFloat(z.re.get_den().get_str()),
            HpFloat(z.im.get_num().get_str()) / HpFloat(z.im.get_den().get_str())};
}
MpC to_mpc(const BC& z) { return {z.re.mid, z.im.mid}; }

template <class C>
MpC eval_mpc(const Poly1<C>& f, const MpC& z) {
    MpC acc;
    for (size_t k = f.c.size(); k-- > 0;) acc = acc * z + to_mpc(f.c[k]);
    return acc;
}

template <class C>
BC eval_ball(const Poly1<C>& f, const BC& z) {
    BC acc;
    for (size_t k = f.c.size(); k-- > 0;) acc = acc * z + promote(f.c[k]);
    return acc;
}

std::complex<double> to_cd(const GQ& z) { return {z.re.get_d(), z.im.get_d()}; }
std::complex<double> to_cd(const BC& z) { return {z.re.to_double(), z.im.to_double()}; }

// Durand-Kerner, double precision; only used to seed certified refinement.
std::vector<std::complex<double>> durand_kerner(std::vector<std::complex<double>> coeffs) {
    int d = static_cast<int>(coeffs.size());
    auto eval = [&](std::complex<double> z) {
        std::complex<double> acc(1.0, 0.0);
        for (int k = d; k-- > 0;) acc = acc * z + coeffs[static_cast<size_t>(k)];
        return acc;
    };
    double scale = 0.0;
    for (const auto& c : coeffs) scale = std::max(scale, std::abs(c));
    scale = 1.0 + std::pow(std::max(scale, 1e-12), 1.0 / d);
    std::vector<std::complex<double>> z(static_cast<size_t>(d));
    std::complex<double> seed(0.4, 0.9), w(1.0, 0.0);
    for (auto& v : z) {
        w *= seed;
        v = scale * w;
    }
    for (int iter = 0; iter < 800; ++iter) {
        double moved = 0;
        for (int i = 0; i < d; ++i) {
            std::complex<double> den(1.0, 0.0);
            for (int j = 0; j < d; ++j)
                if (j != i) den *= (z[static_cast<size_t>(i)] - z[static_cast<size_t>(j)]);
            if (std::abs(den) < 1e-300) den = 1e-300;
            auto delta = eval(z[static_cast<size_t>(i)]) / den;
            z[static_cast<size_t>(i)] -= delta;
            moved = std::max(moved, std::abs(delta));
        }
        if (moved < 1e-14 * scale) break;
    }
    return z;
}

template <class C>
std::vector<std::complex<double>> approx_roots(const Poly1<C>& f) {
    int d = f.degree();
    std::vector<std::complex<double>> coeffs(static_cast<size_t>(d));
    std::complex<double> lead = to_cd(f.c.back());
    for (int k = 0; k < d; ++k)
        coeffs[static_cast<size_t>(k)] = to_cd(f.c[static_cast<size_t>(k)]) / lead;
    return durand_kerner(std::move(coeffs));
}

template <class C>
MpC newton_refine(const Poly1<C>& f, const Poly1<C>& fp, MpC z) {
    HpFloat target = pow(HpFloat(10), -static_cast<int>(2 * hp_digits()));
    for (int it = 0; it < 160; ++it) {
        MpC fv = eval_mpc(f, z);
        if (fv.abs2() < target * target) break;
        MpC dv = eval_mpc(fp, z);
        if (dv.abs2() == 0) break;
        z = z - fv / dv;
    }
    return z;
}

template <class C>
std::vector<Poly1<C>> derivative_tower(const Poly1<C>& f) {
    std::vector<Poly1<C>> d{f};
    while (!d.back().is_zero() && d.back().degree() >= 1) d.push_back(d.back().derivative());
    return d;
}

// Smale alpha-test at z from ball evaluations; certifies a unique root of
// every polynomial inside the coefficient balls within radius out_radius.
template <class C>
bool alpha_certify(const std::vector<Poly1<C>>& derivs, const MpC& z, HpFloat& out_radius) {
    BC zb(Ball(z.re, HpFloat(0)), Ball(z.im, HpFloat(0)));
    auto up_abs = [](const BC& v) {
        Ball mag = v.re * v.re + v.im * v.im;
        return sqrt(mag.mid + mag.rad);
    };
    BC f0 = eval_ball(derivs[0], zb);
    BC f1 = eval_ball(derivs[1], zb);
    HpFloat f1_lo;
    {
        Ball mag = f1.re * f1.re + f1.im * f1.im;
        HpFloat lo2 = mag.mid - mag.rad;
        if (lo2 <= 0) return false;
        f1_lo = sqrt(lo2);
    }
    HpFloat beta = up_abs(f0) / f1_lo;
    HpFloat gamma(0), kfact(1);
    for (size_t k = 2; k < derivs.size(); ++k) {
        kfact *= static_cast<int>(k);
        HpFloat t = up_abs(eval_ball(derivs[k], zb)) / (kfact * f1_lo);
        HpFloat g = pow(t, HpFloat(1) / HpFloat(static_cast<int>(k - 1)));
        if (g > gamma) gamma = g;
    }
    if (beta * gamma > HpFloat("0.02")) return false;
    out_radius = 2 * beta + HpFloat("1e-200");
    return true;
}

Int int_from_hp(const HpFloat& v) {
    Int z;
    mpfr_get_z(z.get_mpz_t(), v.backend().data(), MPFR_RNDN);
    return z;
}

// Continued-fraction reconstruction of a rational candidate.
std::optional<Rat> reconstruct_rat(const HpFloat& v) {
    const HpFloat tol = pow(HpFloat(10), -static_cast<int>(hp_digits() + 20));
    const Int den_bound("1000000000000");
    HpFloat x = v;
    Int h0(0), k0(1), h1(1), k1(0);
    for (int it = 0; it < 200; ++it) {
        HpFloat fl = floor(x);
        if (abs(fl) > HpFloat("1e18")) return std::nullopt;
        Int a = int_from_hp(fl);
        Int h2 = a * h1 + h0, k2 = a * k1 + k0;
        if (k2 > den_bound) return std::nullopt;
        Rat cand(h2, k2);
        cand.canonicalize();
        HpFloat cv = HpFloat(cand.get_num().get_str()) / HpFloat(cand.get_den().get_str());
        if (abs(cv - v) <= tol * (HpFloat(1) + abs(v))) return cand;
        h0 = h1; k0 = k1; h1 = h2; k1 = k2;
        HpFloat frac = x - fl;
        if (frac == 0) return std::nullopt;
        x = HpFloat(1) / frac;
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// exact real-root isolation (Sturm + dyadic bisection)
// ---------------------------------------------------------------------------

int sign_rat(const Rat& v) { return v > 0 ? 1 : (v < 0 ? -1 : 0); }

std::vector<Poly1<Rat>> sturm_chain(const Poly1<Rat>& f) {
    std::vector<Poly1<Rat>> chain{f, f.derivative()};
    while (!chain.back().is_zero() && chain.back().degree() >= 1) {
        auto [q, r] = divmod(chain[chain.size() - 2], chain.back());
        if (r.is_zero()) break;
        chain.push_back(-r);
    }
    return chain;
}

int sign_changes(const std::vector<Poly1<Rat>>& chain, const Rat& x) {
    int changes = 0, prev = 0;
    for (const auto& p : chain) {
        int s = sign_rat(p.eval(x));
        if (s != 0) {
            if (prev != 0 && s != prev) ++changes;
            prev = s;
        }
    }
    return changes;
}

struct RealRoot {
    Ball enclosure;             // imaginary part exactly zero
    std::optional<Rat> exact;
};

std::vector<RealRoot> real_roots_sturm(const Poly1<Rat>& f) {
    std::vector<RealRoot> out;
    if (f.degree() < 1) return out;
    auto chain = sturm_chain(f);
    Rat bound(1);
    for (const auto& c : f.c) {
        Rat a = abs(c / f.c.back());
        if (a > bound) bound = a;
    }
    bound += 1;

    struct Iv { Rat lo, hi; int n; };
    std::vector<Iv> work{{-bound, bound, 0}};
    work[0].n = sign_changes(chain, work[0].lo) - sign_changes(chain, work[0].hi);
    std::vector<std::pair<Rat, Rat>> isolated;
    while (!work.empty()) {
        Iv iv = work.back();
        work.pop_back();
        if (iv.n <= 0) continue;
        if (iv.n == 1) {
            isolated.emplace_back(iv.lo, iv.hi);
            continue;
        }
        Rat mid = (iv.lo + iv.hi) / 2;
        if (f.eval(mid) == 0) {
            out.push_back({Ball(mid), mid});
            out.back().enclosure.rad = 0;
            Rat eps = (iv.hi - iv.lo) / 1000000;
            int nl = sign_changes(chain, iv.lo) - sign_changes(chain, mid - eps);
            int nr = sign_changes(chain, mid + eps) - sign_changes(chain, iv.hi);
            if (nl > 0) work.push_back({iv.lo, mid - eps, nl});
            if (nr > 0) work.push_back({mid + eps, iv.hi, nr});
            continue;
        }
        int nl = sign_changes(chain, iv.lo) - sign_changes(chain, mid);
        if (nl > 0) work.push_back({iv.lo, mid, nl});
        if (iv.n - nl > 0) work.push_back({mid, iv.hi, iv.n - nl});
    }

    const long max_steps = static_cast<long>(3.4 * (hp_digits() + 25)) + 16;
    Rat width_target(Int(1), Int(1));
    for (unsigned k = 0; k < hp_digits() + 25; ++k) width_target /= 10;
    for (auto& [lo, hi] : isolated) {
        int slo = sign_rat(f.eval(lo));
        if (slo == 0) { out.push_back({Ball(lo), lo}); out.back().enclosure.rad = 0; continue; }
        if (sign_rat(f.eval(hi)) == 0) { out.push_back({Ball(hi), hi}); out.back().enclosure.rad = 0; continue; }
        bool exact_hit = false;
        for (long it = 0; it < max_steps && hi - lo > width_target; ++it) {
            Rat mid = (lo + hi) / 2;
            int sm = sign_rat(f.eval(mid));
            if (sm == 0) {
                out.push_back({Ball(mid), mid});
                out.back().enclosure.rad = 0;
                exact_hit = true;
                break;
            }
            if (sm == slo) lo = mid; else hi = mid;
        }
        if (exact_hit) continue;
        Ball enc = Ball((lo + hi) / 2);
        enc.rad += Ball((hi - lo) / 2).upper_abs();
        out.push_back({enc, std::nullopt});
    }
    std::sort(out.begin(), out.end(), [](const RealRoot& a, const RealRoot& b) {
        return a.enclosure.mid < b.enclosure.mid;
    });
    return out;
}

// ---------------------------------------------------------------------------
// edge-polynomial solvers
// ---------------------------------------------------------------------------

struct RootInfo {
    bool exact = false;
    GQ r_exact;
    BC r_ball;
    int mult = 1;
    ZeroStatus im_zero = ZeroStatus::Unknown;
};

Poly1<GQ> split_part(const Poly1<GQ>& f, bool imag) {
    Poly1<GQ> r;
    for (const auto& c : f.c) r.c.push_back(GQ(imag ? c.im : c.re));
    r.trim();
    return r;
}

Poly1<Rat> to_rat_poly(const Poly1<GQ>& f) {
    Poly1<Rat> r;
    for (const auto& c : f.c) {
        if (c.im != 0) throw Error("expected real polynomial");
        r.c.push_back(c.re);
    }
    r.trim();
    return r;
}

std::vector<std::pair<Poly1<GQ>, int>> squarefree(const Poly1<GQ>& f) {
    std::vector<std::pair<Poly1<GQ>, int>> out;
    Poly1<GQ> g = poly_gcd(f, f.derivative());
    if (g.degree() <= 0) {
        out.emplace_back(f, 1);
        return out;
    }
    Poly1<GQ> c = divmod(f, g).first;
    Poly1<GQ> d = divmod(f.derivative(), g).first - c.derivative();
    int m = 1;
    while (c.degree() >= 1) {
        Poly1<GQ> a = poly_gcd(c, d);
        if (a.degree() >= 1) out.emplace_back(a, m);
        c = divmod(c, a).first;
        d = divmod(d, a).first - c.derivative();
        ++m;
    }
    return out;
}

std::vector<RootInfo> roots_of_squarefree(Poly1<GQ> f) {
    std::vector<RootInfo> out;
    bool progress = true;
    while (progress && f.degree() >= 1) {
        progress = false;
        auto approx = approx_roots(f);
        auto fp = f.derivative();
        for (auto& z0 : approx) {
            MpC z = newton_refine(f, fp, MpC(HpFloat(z0.real()), HpFloat(z0.imag())));
            auto re = reconstruct_rat(z.re);
            auto im = reconstruct_rat(z.im);
            if (!re || !im) continue;
            GQ cand(*re, *im);
            if (zero_status(f.eval(cand)) != ZeroStatus::Zero) continue;
            RootInfo ri;
            ri.exact = true;
            ri.r_exact = cand;
            ri.r_ball = promote(cand);
            ri.im_zero = (cand.im == 0) ? ZeroStatus::Zero : ZeroStatus::NonZero;
            out.push_back(ri);
            Poly1<GQ> lin;
            lin.c = {-cand, GQ(Rat(1))};
            f = divmod(f, lin).first;
            progress = true;
            break;
        }
    }
    if (f.degree() < 1) return out;

    // irrational real roots via Sturm on the real carrier polynomial
    Poly1<GQ> re_part = split_part(f, false), im_part = split_part(f, true);
    Poly1<Rat> carrier;
    if (im_part.is_zero())
        carrier = to_rat_poly(re_part);
    else
        carrier = to_rat_poly(poly_gcd(re_part, im_part));
    std::vector<RealRoot> rr;
    if (carrier.degree() >= 1) {
        Poly1<Rat> g = poly_gcd(carrier, carrier.derivative());
        if (g.degree() >= 1) carrier = divmod(carrier, g).first;
        for (auto& r : real_roots_sturm(carrier)) {
            BC z(r.enclosure, Ball(0l));
            if (zero_status(eval_ball(f, z)) != ZeroStatus::NonZero) rr.push_back(r);
        }
    }
    for (auto& r : rr) {
        RootInfo ri;
        ri.r_ball = BC(r.enclosure, Ball(0l));
        ri.im_zero = ZeroStatus::Zero;
        out.push_back(ri);
    }
    int missing = f.degree() - static_cast<int>(rr.size());
    if (missing > 0) {
        auto approx = approx_roots(f);
        auto derivs = derivative_tower(f);
        std::vector<RootInfo> found;
        for (auto& z0 : approx) {
            MpC z = newton_refine(f, derivs[1], MpC(HpFloat(z0.real()), HpFloat(z0.imag())));
            bool near_real = false;
            for (auto& r : rr)
                if (abs(z.re - r.enclosure.mid) < HpFloat("1e-20") &&
                    abs(z.im) < HpFloat("1e-20"))
                    near_real = true;
            if (near_real) continue;
            HpFloat rad;
            if (!alpha_certify(derivs, z, rad))
                throw NumericInconclusive("complex root certification failed");
            RootInfo ri;
            ri.r_ball = BC(Ball(z.re, rad), Ball(z.im, rad));
            ri.im_zero = zero_status(ri.r_ball.im);
            if (ri.im_zero == ZeroStatus::Unknown)
                throw NumericInconclusive("root realness not certifiable");
            found.push_back(ri);
        }
        if (static_cast<int>(found.size()) != missing)
            throw NumericInconclusive("root count mismatch in complex certification");
        for (auto& ri : found) out.push_back(ri);
    }
    return out;
}

std::vector<RootInfo> solve_edge_exact(const Poly1<GQ>& e) {
    std::vector<RootInfo> out;
    for (auto& [f, mult] : squarefree(e)) {
        Poly1<GQ> monic = f;
        GQ lead = monic.c.back();
        for (auto& c : monic.c) c = c / lead;
        auto roots = roots_of_squarefree(monic);
        if (static_cast<int>(roots.size()) != f.degree())
            throw NumericInconclusive("edge polynomial root count mismatch");
        for (auto& r : roots) {
            r.mult = mult;
            out.push_back(r);
        }
    }
    return out;
}

std::vector<RootInfo> solve_edge_ball(const Poly1<BC>& e) {
    std::vector<RootInfo> out;
    int d = e.degree();
    if (d < 1) return out;
    if (zero_status(e.c.back()) != ZeroStatus::NonZero)
        throw NumericInconclusive("edge leading coefficient not certified");
    if (d == 1) {
        RootInfo ri;
        ri.r_ball = -(e.c[0] / e.c[1]);
        ri.im_zero = zero_status(ri.r_ball.im);
        out.push_back(ri);
        return out;
    }
    auto derivs = derivative_tower(e);
    for (auto& z0 : approx_roots(e)) {
        MpC z = newton_refine(e, derivs[1], MpC(HpFloat(z0.real()), HpFloat(z0.imag())));
        HpFloat rad;
        if (!alpha_certify(derivs, z, rad))
            throw LiftStall("ball edge root not certifiable as simple");
        RootInfo ri;
        ri.r_ball = BC(Ball(z.re, rad), Ball(z.im, rad));
        ri.im_zero = zero_status(ri.r_ball.im);
        out.push_back(ri);
    }
    for (size_t i = 0; i < out.size(); ++i)
        for (size_t j = i + 1; j < out.size(); ++j) {
            HpFloat dx = out[i].r_ball.re.mid - out[j].r_ball.re.mid;
            HpFloat dy = out[i].r_ball.im.mid - out[j].r_ball.im.mid;
            if (sqrt(dx * dx + dy * dy) <=
                out[i].r_ball.re.rad + out[j].r_ball.re.rad)
                throw LiftStall("ball edge roots not separated");
        }
    return out;
}

// ---------------------------------------------------------------------------
// polygon recursion
// ---------------------------------------------------------------------------

template <class K>
struct Node {
    std::vector<Poly1<GComplex<K>>> w;  // y-coefficients
    int valid_to = 0;                   // x-degrees below this are trustworthy
    bool lossy = false;                 // nonzero content was truncated away
};

template <class K>
int ydeg_node(const Node<K>& n) {
    for (size_t k = n.w.size(); k-- > 0;)
        if (!n.w[k].is_zero()) return static_cast<int>(k);
    return -1;
}

Node<Ball> promote_node(const Node<Rat>& n) {
    Node<Ball> out;
    out.valid_to = n.valid_to;
    out.lossy = n.lossy;
    out.w.reserve(n.w.size());
    for (const auto& p : n.w) {
        Poly1<BC> q;
        q.c.reserve(p.c.size());
        for (const auto& c : p.c) q.c.push_back(promote(c));
        q.trim();
        out.w.push_back(std::move(q));
    }
    return out;
}

// W(x, x^mu (c + z)) / x^h truncated to the validity window.
template <class K>
Node<K> substitute_shift(const Node<K>& n, int mu, const GComplex<K>& c, int* h_out) {
    using C = GComplex<K>;
    int d = ydeg_node(n);
    std::vector<Poly1<C>> out(static_cast<size_t>(d) + 1);
    for (int j = 0; j <= d; ++j) {
        Poly1<C> acc;
        C cpow = scalar_from_long<C>(1);
        Int binom(1);
        for (int k = j; k <= d; ++k) {
            if (k > j) {
                cpow = cpow * c;
                binom = binom * k / (k - j);
            }
            if (static_cast<size_t>(k) >= n.w.size() || n.w[static_cast<size_t>(k)].is_zero())
                continue;
            C fac = cpow * scalar_from_long<C>(to_long(binom));
            acc = acc + (n.w[static_cast<size_t>(k)] * fac).shifted(mu * k);
        }
        out[static_cast<size_t>(j)] = std::move(acc);
    }
    int h = -1;
    for (auto& p : out) {
        if (p.is_zero()) continue;
        auto o = p.order();
        if (o && (h < 0 || *o < h)) h = *o;
    }
    if (h < 0) throw Error("substituted polynomial vanished identically");
    Node<K> res;
    res.valid_to = n.valid_to - h;
    res.lossy = n.lossy;
    if (res.valid_to <= 0) throw Inconclusive("expansion validity window exhausted");
    res.w.resize(out.size());
    for (size_t j = 0; j < out.size(); ++j) {
        Poly1<C>& p = out[j];
        Poly1<C> q;
        for (size_t k = static_cast<size_t>(h); k < p.c.size(); ++k) {
            int idx = static_cast<int>(k) - h;
            if (idx >= res.valid_to) {
                if (zero_status(p.c[k]) != ZeroStatus::Zero) res.lossy = true;
                continue;
            }
            if (static_cast<int>(q.c.size()) <= idx)
                q.c.resize(static_cast<size_t>(idx) + 1, C{});
            q.c[static_cast<size_t>(idx)] = p.c[k];
        }
        q.trim();
        res.w[j] = std::move(q);
    }
    *h_out = h;
    return res;
}

struct PolygonEdge {
    int mu;
    int j_lo, j_hi;
    int v_lo;
};

template <class K>
std::vector<PolygonEdge> positive_edges(const Node<K>& n, bool* fractional) {
    *fractional = false;
    std::vector<std::pair<int, int>> pts;
    for (size_t j = 0; j < n.w.size(); ++j) {
        if (n.w[j].is_zero()) continue;
        auto o = n.w[j].order();
        if (!o) continue;
        pts.emplace_back(static_cast<int>(j), *o);
    }
    if (pts.size() < 2) return {};
    std::vector<std::pair<int, int>> hull;
    for (auto& p : pts) {
        while (hull.size() >= 2) {
            auto& a = hull[hull.size() - 2];
            auto& b = hull[hull.size() - 1];
            long cross = static_cast<long>(b.first - a.first) * (p.second - a.second) -
                         static_cast<long>(b.second - a.second) * (p.first - a.first);
            if (cross <= 0) hull.pop_back();
            else break;
        }
        hull.push_back(p);
    }
    std::vector<PolygonEdge> edges;
    for (size_t k = 0; k + 1 < hull.size(); ++k) {
        int dj = hull[k + 1].first - hull[k].first;
        int dv = hull[k].second - hull[k + 1].second;
        if (dv <= 0) continue;
        if (dv % dj != 0) {
            *fractional = true;
            continue;
        }
        edges.push_back({dv / dj, hull[k].first, hull[k + 1].first, hull[k].second});
    }
    return edges;
}

template <class K>
Poly1<GComplex<K>> edge_polynomial(const Node<K>& n, const PolygonEdge& e) {
    using C = GComplex<K>;
    Poly1<C> out;
    out.c.assign(static_cast<size_t>(e.j_hi - e.j_lo) + 1, C{});
    for (int j = e.j_lo; j <= e.j_hi; ++j) {
        int v = e.v_lo - e.mu * (j - e.j_lo);
        if (v < 0) break;
        const auto& p = n.w[static_cast<size_t>(j)];
        if (v < static_cast<int>(p.c.size()))
            out.c[static_cast<size_t>(j - e.j_lo)] = p.c[static_cast<size_t>(v)];
    }
    out.trim();
    return out;
}

enum class Mode { FullSeries, Extract };

struct Collector {
    bool numeric = false;
    std::vector<ExpandedBranch<Rat>> full_exact;
    std::vector<ExpandedBranch<Ball>> full_ball;
    std::vector<DatumBranch<Rat>> data_exact;
    std::vector<DatumBranch<Ball>> data_ball;
};

template <class K>
using Prefix = std::vector<std::pair<int, GComplex<K>>>;  // (abs exponent, coeff)

inline Prefix<Ball> promote_prefix(const Prefix<Rat>& p) {
    Prefix<Ball> out;
    for (const auto& [e, c] : p) out.emplace_back(e, promote(c));
    return out;
}

template <class K>
XSeries<GComplex<K>> prefix_series(const Prefix<K>& p, int N) {
    XSeries<GComplex<K>> s(N);
    for (const auto& [e, c] : p)
        if (e < N) s.c[static_cast<size_t>(e)] = c;
    return s;
}

template <class K>
void emit_full(Collector& col, const Prefix<K>& p, int N, int mult) {
    ExpandedBranch<K> b;
    b.tail = prefix_series(p, N);
    b.multiplicity = mult;
    if constexpr (std::is_same_v<K, Rat>) {
        col.full_exact.push_back(std::move(b));
    } else {
        col.numeric = true;
        col.full_ball.push_back(std::move(b));
    }
}

template <class K>
void emit_full_series(Collector& col, XSeries<GComplex<K>> s, int mult) {
    ExpandedBranch<K> b;
    b.tail = std::move(s);
    b.multiplicity = mult;
    if constexpr (std::is_same_v<K, Rat>) {
        col.full_exact.push_back(std::move(b));
    } else {
        col.numeric = true;
        col.full_ball.push_back(std::move(b));
    }
}

template <class K>
void emit_datum(Collector& col, const Prefix<K>& p, int exponent, const GComplex<K>& c,
                int mult) {
    if (exponent % 2 != 0)
        throw NotStable("non-real branch coefficient at odd order " +
                        std::to_string(exponent));
    bool upper;
    if constexpr (std::is_same_v<K, Rat>) upper = c.im > 0;
    else upper = c.im.cert_sign() > 0;
    if (upper) throw NotStable("branch zero set enters the upper half plane");
    DatumBranch<K> d;
    d.L = exponent / 2;
    d.psi0 = -c;
    d.multiplicity = mult;
    for (const auto& [e, cc] : p) {
        if (static_cast<int>(d.q.c.size()) <= e)
            d.q.c.resize(static_cast<size_t>(e) + 1, K{});
        d.q.c[static_cast<size_t>(e)] = -cc.re;
    }
    d.q.trim();
    if constexpr (std::is_same_v<K, Rat>) {
        col.data_exact.push_back(std::move(d));
    } else {
        col.numeric = true;
        col.data_ball.push_back(std::move(d));
    }
}

// Quadratic finish for a separated real branch; true on success, false when
// the branch turned out not to be real.  Soundness: with e = Ord(W_y on a),
// an iterate is accepted only when Ord(W on a) >= N + e AND the residual
// clears the Newton basin condition Ord(W on a) > 2e, which pins the true
// branch to agree with a mod x^N.  Compositions run in a window widened by e
// so that order N + e is actually observable.
template <class K>
bool newton_finish(const BiPolyT<K>& W, const BiPolyT<K>& Wy, const Prefix<K>& p, int N,
                   XSeries<GComplex<K>>* out) {
    using C = GComplex<K>;
    XSeries<K> ar(N);
    for (const auto& [exp, coeff] : p) {
        if (zero_status(coeff.im) != ZeroStatus::Zero) return false;
        if (exp < N) ar.c[static_cast<size_t>(exp)] = coeff.re;
    }
    int last_res = -1;
    for (int it = 0; it < 48; ++it) {
        XSeries<C> den = compose_on_branch(Wy, ar);
        auto e = den.order();
        if (!e) return false;
        if (*e >= N) throw LiftStall("derivative order reaches the truncation budget");
        if (ar.trunc < N + *e) {
            // widen the window; the padding only weakens the approximation
            XSeries<K> wide(N + *e);
            for (int k = 0; k < ar.trunc; ++k) wide.c[static_cast<size_t>(k)] = ar.c[static_cast<size_t>(k)];
            ar = std::move(wide);
            continue;
        }
        XSeries<C> num = compose_on_branch(W, ar);
        auto r = num.order();
        if (!r || *r >= N + *e) {
            if (r && *r <= 2 * *e) throw LiftStall("newton basin not certified");
            if (!r && N + *e <= 2 * *e) throw LiftStall("newton basin not certified");
            *out = complexified(ar.truncated(N));
            return true;
        }
        if (*r <= 2 * *e) throw LiftStall("prefix too short for the newton basin");
        if (*r <= last_res) throw LiftStall("newton residual order stalled");
        last_res = *r;
        XSeries<C> delta = divide_known_valuation(num, den, *e);
        for (int k = 0; k < ar.trunc; ++k) {
            C corr = k < delta.trunc ? delta.c[static_cast<size_t>(k)] : C{};
            C v = C(ar.c[static_cast<size_t>(k)]) - corr;
            if (zero_status(v.im) != ZeroStatus::Zero) return false;
            ar.c[static_cast<size_t>(k)] = v.re;
        }
    }
    throw LiftStall("newton did not converge within iteration budget");
}

template <class K>
struct EngineCtx {
    Mode mode;
    int N;
    BiPolyT<K> W, Wy;
};

EngineCtx<Ball> promote_ctx(const EngineCtx<Rat>& c) {
    return EngineCtx<Ball>{c.mode, c.N, promote(c.W), promote(c.Wy)};
}

template <class K>
void expand_node(const EngineCtx<K>& ctx, const Node<K>& node, const Prefix<K>& prefix,
                 int abs_base, int expected, Collector& col);

// Continue one root of an edge: extend the prefix, substitute, and recurse.
template <class K>
void continue_root(const EngineCtx<K>& ctx, const Node<K>& node, const Prefix<K>& prefix,
                   int abs_exp, int rel_mu, const GComplex<K>& c, int mult,
                   Collector& col) {
    Prefix<K> np = prefix;
    np.emplace_back(abs_exp, c);
    if (abs_exp >= ctx.N - 1) {
        if (ctx.mode == Mode::FullSeries) {
            emit_full(col, np, ctx.N, mult);
            return;
        }
        throw Inconclusive("extraction exponent cap reached before branch datum");
    }
    if (mult == 1 && ctx.mode == Mode::FullSeries) {
        try {
            XSeries<GComplex<K>> s;
            if (newton_finish(ctx.W, ctx.Wy, np, ctx.N, &s)) {
                emit_full_series<K>(col, std::move(s), 1);
                return;
            }
        } catch (const Inconclusive&) {
            // fall through to plain polygon continuation
        }
    }
    int h = 0;
    Node<K> next = substitute_shift(node, rel_mu, c, &h);
    expand_node(ctx, next, np, abs_exp, mult, col);
}

template <class K>
void expand_node(const EngineCtx<K>& ctx, const Node<K>& node, const Prefix<K>& prefix,
                 int abs_base, int expected, Collector& col) {
    if (expected <= 0) return;
    Node<K> cur = node;

    // exactly-zero tails: y^r divides the node polynomial
    int r = 0;
    while (static_cast<size_t>(r) < cur.w.size() && cur.w[static_cast<size_t>(r)].is_zero()) ++r;
    if (r == static_cast<int>(cur.w.size())) throw Error("zero polynomial in expansion");
    if (r > 0) {
        if (cur.lossy)
            throw Inconclusive("cannot separate exact-zero tail under lossy truncation");
        if (ctx.mode == Mode::Extract)
            throw CommonFactor("real-analytic branch: P and its reflection share a factor");
        emit_full(col, prefix, ctx.N, r);
        cur.w.erase(cur.w.begin(), cur.w.begin() + r);
        expected -= r;
        if (expected <= 0) return;
    }

    bool fractional = false;
    auto edges = positive_edges(cur, &fractional);
    int covered = 0;
    for (auto& e : edges) covered += e.j_hi - e.j_lo;
    if (covered != expected) {
        if (fractional)
            throw NotStable("branch with fractional exponent: input outside supported class");
        throw Inconclusive("polygon branch count mismatch (truncation too small?)");
    }

    for (auto& e : edges) {
        int abs_exp = abs_base + e.mu;
        if (ctx.mode == Mode::Extract && abs_exp > ctx.N)
            throw Inconclusive("extraction exponent cap exceeded");
        if (ctx.mode == Mode::FullSeries && abs_exp >= ctx.N) {
            // cluster indistinguishable within budget: same prefix mod x^N
            emit_full(col, prefix, ctx.N, e.j_hi - e.j_lo);
            continue;
        }
        Poly1<GComplex<K>> ep = edge_polynomial(cur, e);
        if (ep.degree() != e.j_hi - e.j_lo)
            throw Inconclusive("edge polynomial degenerated");

        if constexpr (std::is_same_v<K, Rat>) {
            auto roots = solve_edge_exact(ep);
            int total = 0;
            for (auto& ri : roots) total += ri.mult;
            if (total != ep.degree())
                throw NumericInconclusive("edge root multiplicities incomplete");
            for (auto& ri : roots) {
                if (ri.im_zero == ZeroStatus::Unknown)
                    throw NumericInconclusive("edge root realness unknown");
                if (ri.im_zero == ZeroStatus::NonZero) {
                    if (ctx.mode == Mode::FullSeries)
                        throw NotStable("complex coefficient in a real-branch expansion");
                    if (ri.exact) emit_datum<Rat>(col, prefix, abs_exp, ri.r_exact, ri.mult);
                    else emit_datum<Ball>(col, promote_prefix(prefix), abs_exp, ri.r_ball, ri.mult);
                    continue;
                }
                if (ri.exact) {
                    continue_root(ctx, cur, prefix, abs_exp, e.mu, GComplex<Rat>(ri.r_exact.re),
                                  ri.mult, col);
                } else {
                    // switch this subtree to certified high-precision mode
                    static thread_local int depth_guard = 0;
                    (void)depth_guard;
                    EngineCtx<Ball> bctx = promote_ctx(ctx);
                    Node<Ball> bnode = promote_node(cur);
                    Prefix<Ball> bprefix = promote_prefix(prefix);
                    continue_root(bctx, bnode, bprefix, abs_exp, e.mu,
                                  GComplex<Ball>(ri.r_ball.re), ri.mult, col);
                }
            }
        } else {
            auto roots = solve_edge_ball(ep);
            if (static_cast<int>(roots.size()) != ep.degree())
                throw LiftStall("ball edge roots incomplete (multiple root suspected)");
            for (auto& ri : roots) {
                if (ri.im_zero == ZeroStatus::Unknown)
                    throw NumericInconclusive("edge root realness unknown");
                if (ri.im_zero == ZeroStatus::NonZero) {
                    if (ctx.mode == Mode::FullSeries)
                        throw NotStable("complex coefficient in a real-branch expansion");
                    emit_datum<Ball>(col, prefix, abs_exp, ri.r_ball, ri.mult);
                    continue;
                }
                continue_root(ctx, cur, prefix, abs_exp, e.mu, GComplex<Ball>(ri.r_ball.re),
                              ri.mult, col);
            }
        }
    }
}

template <class K>
Node<K> make_node(const BiPolyT<K>& W, int cap) {
    Node<K> n;
    n.valid_to = cap;
    int dy = W.deg_y();
    n.w.resize(static_cast<size_t>(dy) + 1);
    for (int k = 0; k <= dy; ++k) {
        Poly1<GComplex<K>> p = W.y_coeff(k);
        if (static_cast<int>(p.c.size()) > cap) {
            for (size_t j = static_cast<size_t>(cap); j < p.c.size(); ++j)
                if (zero_status(p.c[j]) != ZeroStatus::Zero) n.lossy = true;
            p.c.resize(static_cast<size_t>(cap));
            p.trim();
        }
        n.w[static_cast<size_t>(k)] = std::move(p);
    }
    return n;
}

int branches_through_origin(const BiPoly& W) {
    // multiplicity of y = 0 as a root of W(0, y)
    int dy = W.deg_y();
    for (int k = 0; k <= dy; ++k) {
        if (W.coeff(0, k).re != 0 || W.coeff(0, k).im != 0) return k;
    }
    throw InputError("W(0, y) vanishes identically");
}

} // namespace

ExpandOutcome expand_branches(const BiPoly& W, int N) {
    hp_digits();
    if (W.is_zero()) throw InputError("cannot expand branches of the zero polynomial");
    int m = branches_through_origin(W);
    ExpandOutcome out;
    if (m == 0) return out;
    int cap = N + 2 * std::max(1, W.deg_x()) * std::max(1, W.deg_y()) + 8;
    EngineCtx<Rat> ctx{Mode::FullSeries, N, W, W.derivative_y()};
    Collector col;
    expand_node<Rat>(ctx, make_node(W, cap), {}, 0, m, col);
    out.numeric = col.numeric;
    if (!col.numeric) {
        out.exact = std::move(col.full_exact);
    } else {
        out.ball = std::move(col.full_ball);
        for (auto& b : col.full_exact) {
            ExpandedBranch<Ball> pb;
            pb.multiplicity = b.multiplicity;
            XSeries<BC> s(b.tail.trunc);
            for (int k = 0; k < b.tail.trunc; ++k) s.c[static_cast<size_t>(k)] = promote(b.tail.c[static_cast<size_t>(k)]);
            pb.tail = std::move(s);
            out.ball.push_back(std::move(pb));
        }
    }
    return out;
}

ExtractOutcome extract_branch_data(const BiPoly& W, int exponent_cap) {
    hp_digits();
    if (W.is_zero()) throw InputError("cannot extract branch data of the zero polynomial");
    int m = branches_through_origin(W);
    ExtractOutcome out;
    if (m == 0) return out;
    int cap = exponent_cap + 2 * std::max(1, W.deg_x()) * std::max(1, W.deg_y()) + 8;
    EngineCtx<Rat> ctx{Mode::Extract, exponent_cap, W, W.derivative_y()};
    Collector col;
    expand_node<Rat>(ctx, make_node(W, cap), {}, 0, m, col);
    out.numeric = col.numeric;
    if (!col.numeric) {
        out.exact = std::move(col.data_exact);
    } else {
        out.ball = std::move(col.data_ball);
        for (auto& d : col.data_exact) {
            DatumBranch<Ball> pb;
            pb.L = d.L;
            pb.multiplicity = d.multiplicity;
            pb.psi0 = promote(d.psi0);
            for (auto& c : d.q.c) pb.q.c.push_back(Ball(c));
            pb.q.trim();
            out.ball.push_back(std::move(pb));
        }
    }
    return out;
}

} // namespace stablefrac
