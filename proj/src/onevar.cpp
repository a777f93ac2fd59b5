#include "stablefrac/onevar.hpp"

#include <Eigen/Dense>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>

namespace stablefrac::onevar {

namespace {

using boost::math::quadrature::gauss_kronrod;

constexpr double kRootImagTol = 1e-9;

PolyD trim(PolyD p) {
    while (!p.empty() && std::abs(p.back()) < 1e-300) p.pop_back();
    return p;
}

double poly_scale(const PolyD& p) {
    double s = 0;
    for (const auto& c : p) s = std::max(s, std::abs(c));
    return s > 0 ? s : 1.0;
}

// Splits R at the given points and integrates each finite piece with
// Gauss-Kronrod; the tails go through the substitution y -> 1/u.
double integrate_line(const std::function<double(double)>& f,
                      std::vector<double> split_points) {
    std::sort(split_points.begin(), split_points.end());
    double r = 8.0;
    for (double s : split_points) r = std::max(r, 2.0 * std::abs(s) + 2.0);
    std::vector<double> knots{-r};
    for (double s : split_points)
        if (s > -r && s < r) knots.push_back(s);
    knots.push_back(r);
    double total = 0;
    for (size_t k = 0; k + 1 < knots.size(); ++k) {
        if (knots[k + 1] - knots[k] < 1e-14) continue;
        total += gauss_kronrod<double, 61>::integrate(f, knots[k], knots[k + 1], 12, 1e-10);
    }
    auto tail = [&](double u) {
        if (u == 0) return 0.0;
        return (f(1.0 / u) + f(-1.0 / u)) / (u * u);
    };
    total += gauss_kronrod<double, 61>::integrate(tail, 0.0, 1.0 / r, 12, 1e-10);
    return total;
}

} // namespace

CD eval_poly(const PolyD& p, CD y) {
    CD acc = 0;
    for (size_t k = p.size(); k-- > 0;) acc = acc * y + p[k];
    return acc;
}

PolyD derivative(const PolyD& p) {
    PolyD d;
    for (size_t k = 1; k < p.size(); ++k) d.push_back(p[k] * static_cast<double>(k));
    return d;
}

std::vector<CD> poly_roots(const PolyD& poly) {
    PolyD p = trim(poly);
    int d = static_cast<int>(p.size()) - 1;
    if (d < 1) return {};
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(d, d);
    for (int k = 0; k < d; ++k) {
        m(k, d - 1) = -p[static_cast<size_t>(k)] / p[static_cast<size_t>(d)];
        if (k > 0) m(k, k - 1) = 1.0;
    }
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(m, false);
    std::vector<CD> roots;
    PolyD dp = derivative(p);
    for (int k = 0; k < d; ++k) {
        CD z = es.eigenvalues()(k);
        for (int it = 0; it < 6; ++it) {  // Newton polish
            CD fv = eval_poly(p, z), dv = eval_poly(dp, z);
            if (std::abs(dv) < 1e-280) break;
            z -= fv / dv;
        }
        roots.push_back(z);
    }
    return roots;
}

std::pair<std::vector<double>, std::vector<double>> real_imag_coeffs(const PolyD& p) {
    std::vector<double> a, b;
    for (const auto& c : p) {
        a.push_back(c.real());
        b.push_back(c.imag());
    }
    return {a, b};
}

void require_stable(const PolyD& p) {
    double scale = 1.0;
    for (auto& r : poly_roots(p)) {
        scale = 1.0 + std::abs(r);
        if (r.imag() > -kRootImagTol * scale)
            throw NotStable1D("polynomial has a zero with Im >= 0");
    }
}

QuadratureData quadrature(const PolyD& p_in, double t) {
    PolyD p = trim(p_in);
    if (p.size() < 2) throw InputError("quadrature needs deg p >= 1");
    if (std::abs(p.back() - CD(1.0)) > 1e-9)
        throw InputError("quadrature expects a monic polynomial");
    require_stable(p);

    auto [a, b] = real_imag_coeffs(p);
    PolyD atb(p.size());
    for (size_t k = 0; k < p.size(); ++k) atb[k] = a[k] + t * b[k];
    PolyD bp(b.begin(), b.end());

    QuadratureData out;
    out.t = t;
    PolyD atb_d = derivative(atb);  // already A' + tB'
    double scale = poly_scale(p);
    for (auto& r : poly_roots(atb)) {
        if (std::abs(r.imag()) > 1e-7 * (1.0 + std::abs(r)))
            throw Error("A+tB root unexpectedly complex for a stable input");
        out.nodes.push_back(r.real());
    }
    std::sort(out.nodes.begin(), out.nodes.end());
    for (size_t j = 0; j + 1 < out.nodes.size(); ++j)
        if (out.nodes[j + 1] - out.nodes[j] < 1e-9 * scale)
            throw Error("A+tB roots not simple at working precision");
    for (double n : out.nodes) {
        double bw = eval_poly(bp, n).real();
        double dw = eval_poly(atb_d, n).real();
        double denom = bw * dw;
        if (!(denom > 0)) throw Error("quadrature weight denominator not positive");
        out.weights.push_back(1.0 / denom);
    }
    return out;
}

ParsevalReport parseval_check(const PolyD& q, const PolyD& p, double t, double tol) {
    if (trim(q).size() >= trim(p).size())
        throw InputError("parseval requires deg Q < deg p");
    QuadratureData qd = quadrature(p, t);
    ParsevalReport rep;
    for (size_t j = 0; j < qd.nodes.size(); ++j) {
        double v = std::abs(eval_poly(q, qd.nodes[j]));
        rep.quad_sum += v * v * qd.weights[j];
    }
    auto f = [&](double y) {
        double num = std::abs(eval_poly(q, y));
        double den = std::abs(eval_poly(p, y));
        return num * num / (den * den) / M_PI;
    };
    rep.integral = integrate_line(f, qd.nodes);
    rep.rel_err = std::abs(rep.integral - rep.quad_sum) / (1.0 + std::abs(rep.quad_sum));
    rep.pass = rep.rel_err <= tol;
    return rep;
}

double representation_check(const PolyD& q, const PolyD& p, double t,
                            const std::vector<double>& sample_points) {
    QuadratureData qd = quadrature(p, t);
    auto [a, b] = real_imag_coeffs(trim(p));
    PolyD atb(a.size());
    for (size_t k = 0; k < a.size(); ++k) atb[k] = a[k] + t * b[k];
    PolyD atb_d = derivative(atb);  // already A' + tB'

    double worst = 0;
    for (double y : sample_points) {
        CD acc = 0;
        for (size_t j = 0; j < qd.nodes.size(); ++j) {
            double aj = qd.nodes[j];
            double dprime = eval_poly(atb_d, aj).real();
            // (A+tB)(y)/(y-a_j) evaluated stably by synthetic division
            CD carry = atb.back();
            CD val = 0;
            for (size_t k = atb.size() - 1; k-- > 0;) {
                val = val * y + carry;
                carry = atb[k] + carry * aj;
            }
            acc += eval_poly(q, aj) / dprime * val;
        }
        worst = std::max(worst, std::abs(acc - eval_poly(q, y)));
    }
    return worst;
}

bool interlacing_check(const PolyD& p, double t) {
    require_stable(trim(p));
    auto [a, b] = real_imag_coeffs(trim(p));
    PolyD atb(a.size());
    for (size_t k = 0; k < a.size(); ++k) atb[k] = a[k] + t * b[k];
    PolyD bp(b.begin(), b.end());
    std::vector<double> za, zb;
    double scale = poly_scale(p);
    for (auto& r : poly_roots(atb)) {
        if (std::abs(r.imag()) > 1e-7 * (1 + std::abs(r))) return false;
        za.push_back(r.real());
    }
    for (auto& r : poly_roots(bp)) {
        if (std::abs(r.imag()) > 1e-7 * (1 + std::abs(r))) return false;
        zb.push_back(r.real());
    }
    std::sort(za.begin(), za.end());
    std::sort(zb.begin(), zb.end());
    for (size_t j = 0; j + 1 < za.size(); ++j)
        if (za[j + 1] - za[j] < 1e-9 * scale) return false;
    for (size_t j = 0; j + 1 < zb.size(); ++j)
        if (zb[j + 1] - zb[j] < 1e-9 * scale) return false;
    if (zb.size() + 1 != za.size() && zb.size() != za.size()) {
        // deg B can drop below deg(A+tB)-1 only by cancellation; reject
        return false;
    }
    // strict interlacing: one zero of B between consecutive zeros of A+tB
    for (size_t j = 0; j + 1 < za.size(); ++j) {
        int count = 0;
        for (double z : zb)
            if (z > za[j] && z < za[j + 1]) ++count;
        if (count != 1) return false;
    }
    // positivity of B A' - A B' on a grid
    PolyD ap(a.begin(), a.end());
    PolyD a_d = derivative(ap), b_d = derivative(bp);
    for (int k = -40; k <= 40; ++k) {
        double y = 0.1 * k * std::max(1.0, std::abs(za.back() - za.front()));
        double v = eval_poly(bp, y).real() * eval_poly(a_d, y).real() -
                   eval_poly(ap, y).real() * eval_poly(b_d, y).real();
        if (!(v > 0)) return false;
    }
    return true;
}

CD kernel_eval(const PolyD& p, CD y, CD eta) {
    PolyD pr;  // reflected: conjugate coefficients
    for (const auto& c : p) pr.push_back(std::conj(c));
    CD etab = std::conj(eta);
    CD denom = -CD(0, 2) * (y - etab);
    if (std::abs(denom) > 1e-8) {
        return (eval_poly(p, y) * std::conj(eval_poly(p, eta)) -
                eval_poly(pr, y) * std::conj(eval_poly(pr, eta))) / denom;
    }
    // confluent form at y = conj(eta)
    PolyD pd = derivative(p), prd = derivative(pr);
    return (eval_poly(pd, y) * std::conj(eval_poly(p, eta)) -
            eval_poly(prd, y) * std::conj(eval_poly(pr, eta))) / (-CD(0, 2));
}

namespace {

struct NodeData {
    QuadratureData qd;
    PolyD atb, atb_d, bp, b_d;
};

NodeData node_data(const PolyD& p, double t) {
    NodeData nd;
    nd.qd = quadrature(p, t);
    auto [a, b] = real_imag_coeffs(trim(p));
    nd.atb.resize(a.size());
    for (size_t k = 0; k < a.size(); ++k) nd.atb[k] = a[k] + t * b[k];
    nd.atb_d = derivative(nd.atb);
    nd.bp = PolyD(b.begin(), b.end());
    nd.b_d = derivative(nd.bp);
    return nd;
}

double deflated_abs(const NodeData& nd, double y, double aj) {
    // |(A+tB)(y)/(y - a_j)| via synthetic division by (y - a_j)
    CD carry = nd.atb.back();
    CD val = 0;
    for (size_t k = nd.atb.size() - 1; k-- > 0;) {
        val = val * y + carry;
        carry = nd.atb[k] + carry * aj;
    }
    return std::abs(val);
}

double i_j_norm(const NodeData& nd, const PolyD& p, size_t j, double pexp) {
    auto f = [&](double y) {
        double v = deflated_abs(nd, y, nd.qd.nodes[j]) / std::abs(eval_poly(p, y));
        return std::pow(v, pexp) / M_PI;
    };
    return std::pow(integrate_line(f, nd.qd.nodes), 1.0 / pexp);
}

double dprime_at(const NodeData& nd, double aj) {
    return eval_poly(nd.atb_d, aj).real();  // atb_d is already A' + tB'
}

} // namespace

SamplingReport sampling_bounds_check(const PolyD& q, const PolyD& p, double p_exp,
                                     double t) {
    if (p_exp <= 1) throw InputError("sampling bounds need p > 1 (use the L1 variant)");
    if (trim(q).size() >= trim(p).size())
        throw InputError("sampling bounds require deg Q < deg p");
    NodeData nd = node_data(p, t);
    double p_conj = p_exp / (p_exp - 1);
    size_t m = nd.qd.nodes.size();

    SamplingReport rep;
    rep.p_exp = p_exp;
    auto f = [&](double y) {
        return std::pow(std::abs(eval_poly(q, y)) / std::abs(eval_poly(p, y)), p_exp) / M_PI;
    };
    rep.norm = std::pow(integrate_line(f, nd.qd.nodes), 1.0 / p_exp);

    double sum_p = 0, factor_p = 0;
    for (size_t j = 0; j < m; ++j) {
        double aj = nd.qd.nodes[j];
        double ij_p = i_j_norm(nd, p, j, p_exp);
        double ij_pc = i_j_norm(nd, p, j, p_conj);
        double dp = std::abs(dprime_at(nd, aj));
        double qa = std::abs(eval_poly(q, aj));
        double ba = std::abs(eval_poly(nd.bp, aj).real());
        sum_p += std::pow(qa / dp * ij_p, p_exp);
        factor_p += std::pow(ba / dp * ij_p * ij_pc, p_exp);
    }
    rep.sum_side = std::pow(sum_p, 1.0 / p_exp);
    rep.upper_bound = std::pow(static_cast<double>(m), 1.0 / p_conj) * rep.sum_side;
    rep.lower_factor = std::pow(factor_p, 1.0 / p_exp);
    const double slack = 1.0 + 1e-6;
    rep.upper_ok = rep.norm <= rep.upper_bound * slack;
    rep.lower_ok = rep.sum_side <= rep.norm * rep.lower_factor * slack;
    return rep;
}

SamplingReport sampling_bounds_check_l1(const PolyD& q, const PolyD& p, double t,
                                        double delta) {
    NodeData nd = node_data(p, t);
    size_t m = nd.qd.nodes.size();
    if (trim(q).size() >= trim(p).size())
        throw InputError("L1 sampling bounds require deg Q <= M-1");

    SamplingReport rep;
    rep.p_exp = 1;
    auto f_window = [&](double y) {
        return std::abs(eval_poly(q, y)) / std::abs(eval_poly(p, y)) / M_PI;
    };
    std::vector<double> inner;
    for (double n : nd.qd.nodes)
        if (std::abs(n) < delta) inner.push_back(n);
    std::vector<double> knots{-delta};
    knots.insert(knots.end(), inner.begin(), inner.end());
    knots.push_back(delta);
    std::sort(knots.begin(), knots.end());
    double norm_window = 0;
    for (size_t k = 0; k + 1 < knots.size(); ++k)
        norm_window +=
            gauss_kronrod<double, 61>::integrate(f_window, knots[k], knots[k + 1], 12, 1e-10);
    rep.norm = norm_window;

    double sum1 = 0, factor = 0;
    for (size_t j = 0; j < m; ++j) {
        double aj = nd.qd.nodes[j];
        auto fj = [&](double y) {
            return deflated_abs(nd, y, aj) / std::abs(eval_poly(p, y)) / M_PI;
        };
        double ij_delta = 0;
        for (size_t k = 0; k + 1 < knots.size(); ++k)
            ij_delta +=
                gauss_kronrod<double, 61>::integrate(fj, knots[k], knots[k + 1], 12, 1e-10);
        double dp = std::abs(dprime_at(nd, aj));
        sum1 += std::abs(eval_poly(q, aj)) / dp * ij_delta;

        double sup = 0;  // I_j(t, infinity) estimated on a dense grid
        for (int k = -4000; k <= 4000; ++k) {
            double y = k * 0.005 * std::max(1.0, std::abs(nd.qd.nodes.back()) + 1);
            sup = std::max(sup, deflated_abs(nd, y, aj) / std::abs(eval_poly(p, y)));
        }
        factor += std::abs(eval_poly(nd.bp, aj).real()) / dp * sup * ij_delta;
    }
    rep.sum_side = sum1;
    rep.upper_bound = sum1;  // first inequality: ||Q/p||_{L1(-d,d)} <= sum
    double norm_full = integrate_line(
        [&](double y) { return std::abs(eval_poly(q, y)) / std::abs(eval_poly(p, y)) / M_PI; },
        nd.qd.nodes);
    rep.lower_factor = factor;
    const double slack = 1.0 + 1e-6;
    rep.upper_ok = rep.norm <= sum1 * slack;
    bool lower_applicable = trim(q).size() + 2 <= trim(p).size();
    rep.lower_ok = !lower_applicable || sum1 <= norm_full * factor * slack;
    return rep;
}

} // namespace stablefrac::onevar
