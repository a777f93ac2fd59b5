#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "stablefrac/onevar.hpp"

using namespace stablefrac;
using namespace stablefrac::onevar;

namespace {

PolyD from_roots(const std::vector<CD>& roots) {
    PolyD p{{1, 0}};
    for (CD r : roots) {
        PolyD next(p.size() + 1, CD(0, 0));
        for (size_t j = 0; j < p.size(); ++j) {
            next[j + 1] += p[j];
            next[j] -= r * p[j];
        }
        p = next;
    }
    return p;
}

PolyD random_stable(std::mt19937& rng, int deg) {
    std::uniform_real_distribution<double> re(-1.5, 1.5), im(-1.8, -0.2);
    std::vector<CD> roots;
    for (int k = 0; k < deg; ++k) roots.emplace_back(re(rng), im(rng));
    return from_roots(roots);
}

} // namespace

TEST_CASE("quadrature nodes and weights: linear and quadratic closed forms") {
    // p = y + i: A = y, B = 1; A + tB = y + t: node -t, weight 1
    PolyD p{{0, 1}, {1, 0}};
    for (double t : {0.0, 1.0, -2.5}) {
        QuadratureData qd = quadrature(p, t);
        REQUIRE(qd.nodes.size() == 1);
        CHECK(qd.nodes[0] == doctest::Approx(-t));
        CHECK(qd.weights[0] == doctest::Approx(1.0));
    }

    // p = (y+i)^2: nodes +-1 at t=0, weights 1/4
    PolyD p2{{-1, 0}, {0, 2}, {1, 0}};
    QuadratureData qd = quadrature(p2, 0.0);
    REQUIRE(qd.nodes.size() == 2);
    CHECK(qd.nodes[0] == doctest::Approx(-1.0));
    CHECK(qd.nodes[1] == doctest::Approx(1.0));
    CHECK(qd.weights[0] == doctest::Approx(0.25));
    CHECK(qd.weights[1] == doctest::Approx(0.25));

    CHECK_THROWS_AS(quadrature(PolyD{{0, -1}, {1, 0}}, 0.0), NotStable1D);  // y - i
}

TEST_CASE("parseval identity against closed-form integrals") {
    // int dy/(pi (y^2+1)) = 1 for p = y+i
    ParsevalReport r1 = parseval_check({{1, 0}}, {{0, 1}, {1, 0}}, 0.0);
    CHECK(r1.pass);
    CHECK(r1.quad_sum == doctest::Approx(1.0).epsilon(1e-10));

    // int dy/(pi (y^2+1)^2) = 1/2 for p = (y+i)^2
    ParsevalReport r2 = parseval_check({{1, 0}}, {{-1, 0}, {0, 2}, {1, 0}}, 0.0);
    CHECK(r2.pass);
    CHECK(r2.quad_sum == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(r2.integral == doctest::Approx(0.5).epsilon(1e-8));

    std::mt19937 rng(61);
    for (int it = 0; it < 8; ++it) {
        PolyD p = random_stable(rng, 3);
        PolyD q{{0.7, -0.3}, {1.1, 0.2}};
        ParsevalReport r = parseval_check(q, p, 0.8, 1e-8);
        CHECK(r.pass);
    }
}

TEST_CASE("representation formula reproduces Q at sample points") {
    std::vector<double> samples{-2.3, -0.7, 0.0, 0.4, 1.9};
    CHECK(representation_check({{1, 0}}, {{-1, 0}, {0, 2}, {1, 0}}, 0.0, samples) < 1e-10);

    std::mt19937 rng(67);
    PolyD p = random_stable(rng, 3);
    CHECK(representation_check({{0, 0}, {1, 0}}, p, 0.5, samples) < 1e-8);

    CHECK(representation_check(PolyD{{0, 0}}, p, 0.0, samples) < 1e-14);
}

TEST_CASE("interlacing of A+tB and B zeros") {
    CHECK(interlacing_check({{0, 1}, {1, 0}}, 0.0));
    CHECK(interlacing_check({{-1, 0}, {0, 2}, {1, 0}}, 0.0));

    std::mt19937 rng(71);
    for (int it = 0; it < 20; ++it) {
        PolyD p = random_stable(rng, 2 + it % 5);
        CHECK(interlacing_check(p, -1.5 + 0.3 * it));
    }
}

TEST_CASE("reproducing kernel: constant case and diagonal positivity") {
    PolyD p{{0, 1}, {1, 0}};  // y + i
    CHECK(std::abs(kernel_eval(p, CD(0.3, 0.8), CD(-1.2, 0.4)) - CD(1, 0)) < 1e-12);
    CHECK(std::abs(kernel_eval(p, CD(0, 1), CD(0, 1)) - CD(1, 0)) < 1e-12);

    std::mt19937 rng(73);
    for (int it = 0; it < 10; ++it) {
        PolyD q = random_stable(rng, 3);
        std::uniform_real_distribution<double> d(-2, 2), u(0.1, 2.0);
        CD y(d(rng), u(rng));
        CD k = kernel_eval(q, y, y);
        CHECK(k.real() > 0);
        CHECK(std::abs(k.imag()) < 1e-9 * (1 + k.real()));
        // real-axis diagonal via the confluent form is positive too
        CD yr(d(rng), 0.0);
        CD kr = kernel_eval(q, yr, yr);
        CHECK(kr.real() > 0);
    }
}

TEST_CASE("sampling inequalities hold on a small corpus") {
    std::mt19937 rng(79);
    for (double pe : {4.0 / 3.0, 2.0, 4.0}) {
        for (int it = 0; it < 4; ++it) {
            PolyD p = random_stable(rng, 3);
            PolyD q{{0.4, 0.1}, {-0.8, 0.5}};
            SamplingReport rep = sampling_bounds_check(q, p, pe, 0.7);
            CHECK(rep.upper_ok);
            CHECK(rep.lower_ok);
        }
    }
    // p = 2 reduces to Parseval-type bounds
    PolyD p2{{-1, 0}, {0, 2}, {1, 0}};
    SamplingReport rep = sampling_bounds_check({{1, 0}}, p2, 2.0, 0.0);
    CHECK(rep.upper_ok);
    CHECK(rep.lower_ok);

    PolyD p3 = random_stable(rng, 3);
    SamplingReport l1 = sampling_bounds_check_l1({{1, 0}}, p3, 1.0, 1.0);
    CHECK(l1.upper_ok);
    CHECK(l1.lower_ok);
}
