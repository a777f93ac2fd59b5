#include "stablefrac/numverify.hpp"

#include <cmath>
#include <complex>

#include "stablefrac/integrability.hpp"

namespace stablefrac::numverify {

namespace {

using CD = std::complex<double>;

struct FastPoly {
    struct Term {
        int dx, dy;
        CD c;
    };
    std::vector<Term> terms;
    int max_dx = 0, max_dy = 0;

    explicit FastPoly(const BiPoly& p) {
        for (const auto& [k, v] : p.terms) {
            terms.push_back({k.first, k.second, CD(v.re.get_d(), v.im.get_d())});
            max_dx = std::max(max_dx, k.first);
            max_dy = std::max(max_dy, k.second);
        }
    }

    CD eval(double x, double y) const {
        // power tables beat pow() for the cell counts we run
        double px[64], py[64];
        px[0] = py[0] = 1.0;
        for (int k = 1; k <= max_dx; ++k) px[k] = px[k - 1] * x;
        for (int k = 1; k <= max_dy; ++k) py[k] = py[k - 1] * y;
        CD acc = 0;
        for (const auto& t : terms) acc += t.c * (px[t.dx] * py[t.dy]);
        return acc;
    }
};

// 4-point Gauss-Legendre on [-1, 1]
constexpr double kGx[4] = {-0.8611363115940526, -0.3399810435848563,
                           0.3399810435848563, 0.8611363115940526};
constexpr double kGw[4] = {0.3478548451374538, 0.6521451548625461,
                           0.6521451548625461, 0.3478548451374538};

struct CellIntegrator {
    const std::function<double(double, double)>& f;
    long budget;
    long used = 0;
    // optional singularity-aware forcing: refine while the predicate holds
    std::function<bool(double, double, double, double)> force_refine;

    double rule(double x0, double x1, double y0, double y1) const {
        double hx = 0.5 * (x1 - x0), cx = 0.5 * (x0 + x1);
        double hy = 0.5 * (y1 - y0), cy = 0.5 * (y0 + y1);
        double acc = 0;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j)
                acc += kGw[i] * kGw[j] * f(cx + hx * kGx[i], cy + hy * kGx[j]);
        return acc * hx * hy;
    }

    double integrate(double x0, double x1, double y0, double y1, double rel_tol,
                     int depth_left) {
        ++used;
        double whole = rule(x0, x1, y0, y1);
        if (depth_left <= 0 || used >= budget) return whole;
        double xm = 0.5 * (x0 + x1), ym = 0.5 * (y0 + y1);
        double parts = rule(x0, xm, y0, ym) + rule(xm, x1, y0, ym) +
                       rule(x0, xm, ym, y1) + rule(xm, x1, ym, y1);
        used += 4;
        bool forced = force_refine && depth_left > 4 && force_refine(x0, x1, y0, y1);
        if (!forced &&
            std::abs(parts - whole) <= rel_tol * (std::abs(parts) + 1e-300)) return parts;
        return integrate(x0, xm, y0, ym, rel_tol, depth_left - 1) +
               integrate(xm, x1, y0, ym, rel_tol, depth_left - 1) +
               integrate(x0, xm, ym, y1, rel_tol, depth_left - 1) +
               integrate(xm, x1, ym, y1, rel_tol, depth_left - 1);
    }
};

double regression_slope(const std::vector<double>& ks, const std::vector<double>& vs) {
    double n = static_cast<double>(ks.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (size_t i = 0; i < ks.size(); ++i) {
        sx += ks[i];
        sy += vs[i];
        sxx += ks[i] * ks[i];
        sxy += ks[i] * vs[i];
    }
    double d = n * sxx - sx * sx;
    if (std::abs(d) < 1e-12) return 0;
    return (n * sxy - sx * sy) / d;
}

} // namespace

ScalingReport classify_scaling(const std::function<double(double, double)>& f,
                               const IntegrateOptions& opt,
                               const std::function<bool(double, double, double, double)>&
                                   force_refine) {
    ScalingReport rep;
    rep.k_min = opt.k_min;
    CellIntegrator ci{f, opt.cell_budget, 0, force_refine};
    bool overflowed = false, vanished = false;
    for (int k = opt.k_min; k <= opt.k_max; ++k) {
        double a = std::ldexp(1.0, -k - 1);  // inner half-size
        double b = 2 * a;                    // outer half-size
        // square frame split into four rectangles
        double s = 0;
        int depth = 11;
        double tol = 2e-5;
        s += ci.integrate(-b, b, a, b, tol, depth);
        s += ci.integrate(-b, b, -b, -a, tol, depth);
        s += ci.integrate(-b, -a, -a, a, tol, depth);
        s += ci.integrate(a, b, -a, a, tol, depth);
        rep.annuli.push_back(s);
        rep.total += s;
        if (!std::isfinite(s) || s > 1e250) {
            overflowed = true;
            break;
        }
        if (s < 1e-250) {
            vanished = true;
            break;
        }
        if (ci.used >= opt.cell_budget) break;
    }
    rep.cells = ci.used;

    if (overflowed) {
        rep.verdict = Verdict::Diverges;
        rep.slope = 1e9;
        return rep;
    }
    if (vanished) {
        rep.verdict = Verdict::Converges;
        rep.slope = -1e9;
        return rep;
    }
    size_t n = rep.annuli.size();
    if (n < 6) {
        rep.verdict = Verdict::Inconclusive;
        return rep;
    }
    std::vector<double> ks, vs;
    for (size_t i = n / 2; i < n; ++i) {
        if (rep.annuli[i] <= 0) continue;
        ks.push_back(static_cast<double>(opt.k_min) + static_cast<double>(i));
        vs.push_back(std::log2(rep.annuli[i]));
    }
    if (ks.size() < 4) {
        rep.verdict = rep.total > 0 ? Verdict::Converges : Verdict::Inconclusive;
        return rep;
    }
    rep.slope = regression_slope(ks, vs);
    if (rep.slope <= -opt.margin) {
        rep.verdict = Verdict::Converges;
    } else if (rep.slope >= opt.margin) {
        rep.verdict = Verdict::Diverges;
    } else {
        // flat scaling: check for monotone non-summable growth
        bool nondecreasing = true;
        for (size_t i = n - 5; i + 1 < n; ++i)
            if (rep.annuli[i + 1] < rep.annuli[i] * 0.999) nondecreasing = false;
        rep.verdict = nondecreasing ? Verdict::Diverges : Verdict::Inconclusive;
    }
    return rep;
}

ScalingReport integrate_local(const BiPoly& q, const BiPoly& p, double p_exp,
                              IntegrateOptions opt) {
    FastPoly fq(q), fp(p);
    auto f = [fq, fp, p_exp](double x, double y) {
        double den = std::abs(fp.eval(x, y));
        if (den == 0) return 0.0;  // measure-zero set; the annuli avoid (0,0)
        double num = std::abs(fq.eval(x, y));
        return std::pow(num / den, p_exp);
    };
    int kexp = std::max(2, opt.singular_exponent);
    auto force = [fp, kexp](double x0, double x1, double y0, double y1) {
        double size = std::max(x1 - x0, y1 - y0);
        double pmin = std::min(std::min(std::abs(fp.eval(x0, y0)), std::abs(fp.eval(x0, y1))),
                               std::min(std::abs(fp.eval(x1, y0)), std::abs(fp.eval(x1, y1))));
        return pmin < std::pow(size, kexp);
    };
    return classify_scaling(f, opt, force);
}

Verdict oracle_membership(const BiPoly& q, const LocalModel& m, double p_exp,
                          std::optional<double> p_star, double gap,
                          IntegrateOptions opt) {
    if (p_star && std::abs(p_exp - *p_star) < gap) return Verdict::Inconclusive;
    BiPoly p = build_P_from_model(m);
    opt.singular_exponent = m.max_2l();
    return integrate_local(q, p, p_exp, opt).verdict;
}

DerivativeProbe derivative_probe(const LocalModel& m, double window,
                                 IntegrateOptions opt) {
    BiPoly p = build_P_from_model(m);
    BiPoly py = p.derivative_y();
    FastPoly fp(p), fpy(py);
    DerivativeProbe probe;
    probe.expected = 1.0 + 1.0 / m.max_2l();
    auto run = [&](double pe) {
        auto f = [&](double x, double y) {
            CD pv = fp.eval(x, y);
            if (std::abs(pv) == 0) return 0.0;
            double v = std::abs((fpy.eval(x, y) / pv).imag());
            return std::pow(v, pe);
        };
        int kexp = m.max_2l();
        auto force = [&](double x0, double x1, double y0, double y1) {
            double size = std::max(x1 - x0, y1 - y0);
            double pmin = std::min(std::min(std::abs(fp.eval(x0, y0)), std::abs(fp.eval(x0, y1))),
                                   std::min(std::abs(fp.eval(x1, y0)), std::abs(fp.eval(x1, y1))));
            return pmin < std::pow(size, kexp);
        };
        return classify_scaling(f, opt, force).verdict;
    };
    probe.below = run(probe.expected - window);
    probe.above = run(probe.expected + window);
    probe.ok = probe.below == Verdict::Converges && probe.above == Verdict::Diverges;
    return probe;
}

} // namespace stablefrac::numverify
