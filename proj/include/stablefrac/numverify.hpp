#ifndef STABLEFRAC_NUMVERIFY_HPP
#define STABLEFRAC_NUMVERIFY_HPP

#include <functional>
#include <optional>
#include <vector>

#include "stablefrac/localmodel.hpp"

namespace stablefrac::numverify {

enum class Verdict { Converges, Diverges, Inconclusive };

// Dyadic-annulus integration record: s_k is the integral of the integrand
// over { 2^-(k+1) <= max(|x|,|y|) < 2^-k }.
struct ScalingReport {
    std::vector<double> annuli;
    int k_min = 1;
    double slope = 0;        // log2 regression slope of s_k against k
    double total = 0;
    long cells = 0;          // adaptive cells spent
    Verdict verdict = Verdict::Inconclusive;
};

struct IntegrateOptions {
    double margin = 0.1;     // slope dead zone
    int k_min = 1;
    int k_max = 22;
    long cell_budget = 300000;
    int singular_exponent = 2;  // refine where min|P| < size^K
};

// Generic annulus classifier for a nonnegative integrand; force_refine may
// mark cells that must be subdivided regardless of the error estimate.
ScalingReport classify_scaling(
    const std::function<double(double, double)>& f, const IntegrateOptions& opt,
    const std::function<bool(double, double, double, double)>& force_refine = {});

// Local L^p classification of |Q/P|^p near (0,0).
ScalingReport integrate_local(const BiPoly& q, const BiPoly& p, double p_exp,
                              IntegrateOptions opt = {});

// Oracle wrapper on a model: near a known critical exponent the verdict is
// deliberately Inconclusive (log divergences are numerically invisible).
Verdict oracle_membership(const BiPoly& q, const LocalModel& m, double p_exp,
                          std::optional<double> p_star = std::nullopt,
                          double gap = 0.05, IntegrateOptions opt = {});

struct DerivativeProbe {
    double expected = 0;     // 1 + 1/K
    Verdict below, above;    // at expected -/+ window
    bool ok = false;         // below converges and above diverges
};

// Brackets the integrability threshold of Im(P_y/P) around 1 + 1/K.
DerivativeProbe derivative_probe(const LocalModel& m, double window = 0.1,
                                 IntegrateOptions opt = {});

} // namespace stablefrac::numverify

#endif
