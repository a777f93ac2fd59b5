#include "stablefrac/localmodel.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <complex>

#include "stablefrac/puiseux.hpp"

namespace stablefrac {

namespace {

template <class K>
bool datum_less(const BranchDatumT<K>& a, const BranchDatumT<K>& b) {
    if (a.L != b.L) return a.L < b.L;
    size_t n = std::max(a.q.c.size(), b.q.c.size());
    for (size_t k = 0; k < n; ++k) {
        double av = k < a.q.c.size() ? ScalarTraits<K>::to_double(a.q.c[k]) : 0.0;
        double bv = k < b.q.c.size() ? ScalarTraits<K>::to_double(b.q.c[k]) : 0.0;
        if constexpr (is_exact_scalar<K>) {
            Rat ar = k < a.q.c.size() ? a.q.c[k] : Rat(0);
            Rat br = k < b.q.c.size() ? b.q.c[k] : Rat(0);
            if (ar != br) return ar < br;
        } else {
            if (av != bv) return av < bv;
        }
    }
    return false;
}

std::vector<std::complex<double>> complex_roots(const std::vector<std::complex<double>>& coeffs) {
    // roots of sum coeffs[k] y^k via the companion matrix
    int d = static_cast<int>(coeffs.size()) - 1;
    while (d > 0 && std::abs(coeffs[static_cast<size_t>(d)]) < 1e-14) --d;
    if (d < 1) return {};
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(d, d);
    for (int k = 0; k < d; ++k) {
        m(k, d - 1) = -coeffs[static_cast<size_t>(k)] / coeffs[static_cast<size_t>(d)];
        if (k > 0) m(k, k - 1) = 1.0;
    }
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(m, false);
    std::vector<std::complex<double>> out;
    for (int k = 0; k < d; ++k) out.push_back(es.eigenvalues()(k));
    return out;
}

} // namespace

Extraction extract_local_model(const BiPoly& p) {
    if (p.is_zero()) throw InputError("zero polynomial has no local model");
    if (zero_status(p.eval(GaussianRational{}, GaussianRational{})) != ZeroStatus::Zero)
        throw InputError("P(0,0) != 0: no singularity at the origin");

    // curve-of-zeros detection: a common factor through the origin
    BiPoly g = bipoly_gcd(p, p.reflected());
    if (g.deg_x() > 0 || g.deg_y() > 0) {
        if (zero_status(g.eval(GaussianRational{}, GaussianRational{})) == ZeroStatus::Zero)
            throw CommonFactor("P and reflect(P) share a factor through the origin");
    }

    int cap = 2 * std::max(1, p.deg_x()) * std::max(1, p.deg_y()) + 6;
    ExtractOutcome data = extract_branch_data(p, cap);

    Extraction out;
    out.numeric = data.numeric;
    auto build = [&](auto& branches, auto& model) {
        using DB = std::decay_t<decltype(branches[0])>;
        using KK = std::decay_t<decltype(branches[0].q.c[0])>;
        (void)sizeof(DB);
        for (auto& d : branches) {
            BranchDatumT<KK> bd;
            bd.L = d.L;
            bd.q = d.q;
            if (bd.q.degree() >= 2 * bd.L)
                throw Error("extracted datum violates deg q < 2L");
            for (int copy = 0; copy < d.multiplicity; ++copy) model.branches.push_back(bd);
        }
        std::sort(model.branches.begin(), model.branches.end(), datum_less<KK>);
    };
    if (!data.numeric) {
        build(data.exact, out.model);
        out.model_ball = promote_model(out.model);
        for (const auto& b : out.model.branches)
            if (b.q.coeff(1) <= 0) out.weak_stability_warning = true;
    } else {
        build(data.ball, out.model_ball);
        for (const auto& b : out.model_ball.branches) {
            Ball c1 = b.q.coeff(1);
            if (zero_status(c1) == ZeroStatus::Zero || c1.mid < 0)
                out.weak_stability_warning = true;
        }
    }
    return out;
}

StabilityWitness check_stability_sample(const BiPoly& p, int grid_refinement) {
    StabilityWitness w;
    if (p.deg_y() < 1) return w;  // no y-roots at all

    std::vector<double> xs_real, xs_imag;
    xs_real.push_back(0.0);
    for (int k = 0; k <= grid_refinement; ++k) {
        double t = std::pow(10.0, -3.0 + 3.0 * k / grid_refinement);
        xs_real.push_back(t);
        xs_real.push_back(-t);
        xs_imag.push_back(t);
    }

    const double tol = 1e-7;
    auto probe = [&](std::complex<double> x) -> bool {
        std::vector<std::complex<double>> coeffs(static_cast<size_t>(p.deg_y()) + 1, 0.0);
        for (const auto& [k, v] : p.terms) {
            std::complex<double> c(v.re.get_d(), v.im.get_d());
            coeffs[static_cast<size_t>(k.second)] += c * std::pow(x, k.first);
        }
        for (auto& y : complex_roots(coeffs)) {
            double scale = 1.0 + std::abs(y);
            if (y.imag() > tol * scale) {
                w.stable = false;
                w.x_re = x.real();
                w.x_im = x.imag();
                w.y_re = y.real();
                w.y_im = y.imag();
                return false;
            }
        }
        return true;
    };

    for (double xr : xs_real)
        if (!probe({xr, 0.0})) return w;
    // interior points of H x H with both orderings covered by symmetry of the
    // definition: x in H, any y-root in H is a stability violation
    for (double xi : xs_imag)
        for (double xr : {0.0, 0.5, -0.5, 1.0, -1.0, 0.05, -0.05})
            if (!probe({xr, xi})) return w;
    return w;
}

} // namespace stablefrac
