#ifndef STABLEFRAC_ONEVAR_HPP
#define STABLEFRAC_ONEVAR_HPP

#include <complex>
#include <vector>

#include "stablefrac/errors.hpp"

namespace stablefrac::onevar {

// This whole module is a binary64 verification harness for the one-variable
// quadrature/representation identities; it is not on the exact decision path.

using CD = std::complex<double>;
using PolyD = std::vector<CD>;  // coefficients ascending

CD eval_poly(const PolyD& p, CD y);
PolyD derivative(const PolyD& p);
std::vector<CD> poly_roots(const PolyD& p);

// A = (p + reflect p)/2, B = (p - reflect p)/(2i): coefficientwise Re and Im.
std::pair<std::vector<double>, std::vector<double>> real_imag_coeffs(const PolyD& p);

// Throws NotStable1D unless every root lies strictly below the real axis.
void require_stable(const PolyD& p);

struct QuadratureData {
    double t = 0;
    std::vector<double> nodes;    // real roots of A + tB, ascending
    std::vector<double> weights;  // 1 / (B(a_j) (A'(a_j) + t B'(a_j)))
};

QuadratureData quadrature(const PolyD& p, double t);

struct ParsevalReport {
    double integral = 0;  // int |Q/p|^2 dy/pi
    double quad_sum = 0;  // sum |Q(a_j)|^2 w_j
    double rel_err = 0;
    bool pass = false;
};

ParsevalReport parseval_check(const PolyD& q, const PolyD& p, double t, double tol = 1e-8);

// Max deviation of Q from its node-interpolation representation on samples.
double representation_check(const PolyD& q, const PolyD& p, double t,
                            const std::vector<double>& sample_points);

// Simple real zeros of A+tB and B, strict interlacing, positivity of
// B A' - A B' on a grid.
bool interlacing_check(const PolyD& p, double t);

// Reproducing kernel K(y, eta); uses the confluent form near y = conj(eta).
CD kernel_eval(const PolyD& p, CD y, CD eta);

struct SamplingReport {
    double p_exp = 2;
    double norm = 0;          // ||Q/p||_p
    double sum_side = 0;      // (sum |Q(a_j)/(A'+tB')(a_j)|^p I_j^p)^(1/p)
    double upper_bound = 0;   // M^(1/p') * sum_side
    double lower_factor = 0;  // (sum |B/(A'+tB')|^p I_j(p)^p I_j(p')^p)^(1/p)
    bool upper_ok = false;    // norm <= upper_bound
    bool lower_ok = false;    // sum_side <= norm * lower_factor
};

// Both displayed inequalities of the L^p sampling bounds; p_exp > 1.
SamplingReport sampling_bounds_check(const PolyD& q, const PolyD& p, double p_exp,
                                     double t);

// The p = 1 variant with the window integrals I_j^delta.
SamplingReport sampling_bounds_check_l1(const PolyD& q, const PolyD& p, double t,
                                        double delta);

} // namespace stablefrac::onevar

#endif
