#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "stablefrac/integrability.hpp"
#include "stablefrac/numverify.hpp"
#include "stablefrac/parser.hpp"

using namespace stablefrac;
using numverify::Verdict;

namespace {

LocalModel model_1x() {
    LocalModel m;
    m.branches.push_back({1, Poly1<Rat>({Rat(0), Rat(1)})});
    return m;
}

} // namespace

TEST_CASE("first-example integrals classify correctly") {
    BiPoly p = parse_halfplane("y+x+2*i*x^2");
    numverify::IntegrateOptions opt;
    opt.margin = 0.05;
    auto r1 = numverify::integrate_local(BiPoly::constant(1), p, 1.0, opt);
    CHECK(r1.verdict == Verdict::Converges);
    auto r2 = numverify::integrate_local(BiPoly::constant(1), p, 2.0, opt);
    CHECK(r2.verdict == Verdict::Diverges);
}

TEST_CASE("monomial family x^j over y+2ix^2: member iff j > 2 - 3/p") {
    BiPoly p = parse_halfplane("y+2*i*x^2");
    numverify::IntegrateOptions opt;
    opt.margin = 0.05;
    struct Case { int j; double p_exp; bool member; };
    // thresholds: j=1 -> p*=3, j=2 -> all p
    for (const Case& c : {Case{0, 1.2, true}, Case{0, 1.8, false}, Case{1, 2.5, true},
                          Case{1, 3.5, false}, Case{2, 6.0, true}}) {
        BiPoly q = BiPoly::monomial(c.j, 0);
        auto rep = numverify::integrate_local(q, p, c.p_exp, opt);
        CHECK(rep.verdict == (c.member ? Verdict::Converges : Verdict::Diverges));
    }
}

TEST_CASE("oracle is inconclusive near the critical exponent by policy") {
    LocalModel m = model_1x();
    CHECK(numverify::oracle_membership(BiPoly::constant(1), m, 1.51, 1.5) ==
          Verdict::Inconclusive);
    CHECK(numverify::oracle_membership(BiPoly::constant(1), m, 1.2, 1.5) ==
          Verdict::Converges);
}

TEST_CASE("oracle agrees with the symbolic verdict on a paper-built member") {
    // easy2branch with Q = x*F_1 + x^2*F_2 truncation-free stand-in:
    // Q = x(y+2x) + x^2 passes at p=2 by the coordinate conditions
    LocalModel m;
    m.branches.push_back({1, Poly1<Rat>({Rat(0), Rat(1)})});
    m.branches.push_back({1, Poly1<Rat>({Rat(0), Rat(2)})});
    BiPoly q = parse_halfplane("x*(y+2*x)+x^2");
    REQUIRE(is_in_Lp(q, m, Rat(2)).verdict);
    numverify::IntegrateOptions opt;
    opt.margin = 0.05;
    ExponentRange er = lp_threshold(q, m);
    double pstar = er.p_star ? er.p_star->get_d() : -1;
    CHECK(numverify::oracle_membership(q, m, 2.0, pstar, 0.05, opt) == Verdict::Converges);
}

TEST_CASE("symmetry sanity: conjugate data integrate identically") {
    BiPoly p = parse_halfplane("y+x+2*i*x^2");
    BiPoly q = parse_halfplane("x+i*x^2");
    numverify::IntegrateOptions opt;
    opt.k_max = 12;
    auto a = numverify::integrate_local(q, p, 1.25, opt);
    auto b = numverify::integrate_local(q.reflected(), p.reflected(), 1.25, opt);
    REQUIRE(a.annuli.size() == b.annuli.size());
    for (size_t k = 0; k < a.annuli.size(); ++k)
        CHECK(a.annuli[k] == doctest::Approx(b.annuli[k]).epsilon(1e-6));
}

TEST_CASE("derivative probes bracket 1 + 1/K") {
    numverify::IntegrateOptions opt;
    opt.margin = 0.05;
    auto p1 = numverify::derivative_probe(model_1x(), 0.2, opt);
    CHECK(p1.expected == doctest::Approx(1.5));
    CHECK(p1.ok);

    LocalModel m2;
    m2.branches.push_back({1, Poly1<Rat>()});
    m2.branches.push_back({2, Poly1<Rat>()});
    auto p2 = numverify::derivative_probe(m2, 0.2, opt);
    CHECK(p2.expected == doctest::Approx(1.25));
    CHECK(p2.ok);
}
