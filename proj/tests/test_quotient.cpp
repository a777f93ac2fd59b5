#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "stablefrac/parser.hpp"
#include "stablefrac/quotient.hpp"

using namespace stablefrac;

namespace {

LocalModel make_model(std::initializer_list<std::pair<int, std::vector<long>>> data) {
    LocalModel m;
    for (const auto& [l, q] : data) {
        BranchDatumT<Rat> d;
        d.L = l;
        Poly1<Rat> qq;
        qq.c.push_back(Rat(0));
        for (long c : q) qq.c.push_back(Rat(c));
        qq.trim();
        d.q = qq;
        m.branches.push_back(std::move(d));
    }
    return m;
}

const LocalModel kEasy = make_model({{1, {1}}, {1, {2}}});
const LocalModel kPex = make_model({{1, {}}, {4, {1}}, {2, {}}});

QuotientBasis basis_for(const LocalModel& m, unsigned seed = 0) {
    ProperTResult pt = find_proper_t(m, default_truncation(m), seed);
    return quotient_basis(m, pt.sys, pt.cert);
}

} // namespace

TEST_CASE("quotient basis sizes match the worked examples") {
    QuotientBasis qb = basis_for(kEasy);
    CHECK(qb.m_k == std::vector<int>({3, 3}));
    // F_1 = y - a_2, F_2 = 1
    REQUIRE(qb.exact.f.size() == 2);
    CHECK(qb.exact.f[1].deg() == 0);
    CHECK(qb.exact.f[0].deg() == 1);
    for (int k = 0; k < qb.trunc; ++k) {
        GaussianRational got = qb.exact.f[0].yc[0].c[static_cast<size_t>(k)];
        CHECK(got == GaussianRational(-qb.exact.a[1].c[static_cast<size_t>(k)]));
    }

    QuotientBasis qb2 = basis_for(make_model({{1, {}}, {2, {}}}));
    CHECK(qb2.m_k == std::vector<int>({4, 6}));

    QuotientBasis qb3 = basis_for(make_model({{2, {1, -1, 2}}}));
    CHECK(qb3.m_k == std::vector<int>({4}));
    CHECK(qb3.exact.f[0].deg() == 0);
}

TEST_CASE("reduction recovers basis coordinates") {
    QuotientBasis qb = basis_for(kEasy);
    // x^i * F_1 truncations should come back as c_1 = x^i, c_2 = 0
    for (int i = 0; i < 3; ++i) {
        BiPoly q;
        for (int k = 0; k < qb.trunc; ++k) {
            GaussianRational c = qb.exact.f[0].yc[0].c[static_cast<size_t>(k)];
            if (!(c == GaussianRational{})) q.add_term(k + i, 0, c);
        }
        // y-coefficient of F_1 is 1
        q.add_term(i, 1, gq(1));
        CoordinateVector cv = reduce_mod_ideal(q, kEasy, qb);
        REQUIRE(!cv.numeric);
        CHECK(cv.exact[0] .degree() == i);
        CHECK(cv.exact[0].coeff(static_cast<size_t>(i)) == gq(1));
        CHECK(cv.exact[1].is_zero());
    }
}

TEST_CASE("elements of (P, reflect P) reduce to zero coordinates") {
    std::mt19937 rng(47);
    std::uniform_int_distribution<int> cf(-3, 3), dx(0, 2), dy(0, 1);
    BiPoly p = build_P_from_model(kEasy);
    BiPoly pbar = p.reflected();
    QuotientBasis qb = basis_for(kEasy);
    for (int it = 0; it < 10; ++it) {
        BiPoly g = BiPoly::monomial(dx(rng), dy(rng), gq(cf(rng), cf(rng)));
        BiPoly h = BiPoly::monomial(dx(rng), dy(rng), gq(cf(rng), cf(rng)));
        BiPoly q = g * p + h * pbar;
        if (q.is_zero()) continue;
        CoordinateVector cv = reduce_mod_ideal(q, kEasy, qb);
        for (const auto& c : cv.exact) CHECK(c.is_zero());
    }
}

TEST_CASE("reduction transcript reconstructs the input") {
    std::mt19937 rng(53);
    std::uniform_int_distribution<int> cf(-3, 3), dx(0, 3), dy(0, 2);
    for (const LocalModel& m : {kEasy, make_model({{1, {}}, {2, {}}}), kPex}) {
        QuotientBasis qb = basis_for(m);
        for (int it = 0; it < 6; ++it) {
            BiPoly q;
            for (int k = 0; k < 3; ++k) q.add_term(dx(rng), dy(rng), gq(cf(rng), cf(rng)));
            if (q.is_zero()) q = BiPoly::constant(1);
            CHECK(verify_reduction(q, m, qb));
        }
    }
}

TEST_CASE("relabeling follows the nested maximality rule") {
    CHECK(relabel_for_p(kPex, rat(5, 4)) == std::vector<int>({0, 1, 2}));
    CHECK(relabel_for_p(kPex, Rat(3)) == std::vector<int>({0, 2, 1}));
    CHECK(relabel_for_p(kPex, std::nullopt) == std::vector<int>({0, 2, 1}));
    CHECK(relabel_for_p(make_model({{2, {1, 2, 3}}}), Rat(2)) == std::vector<int>({0}));
    // symmetric models stay in identity order
    CHECK(relabel_for_p(kEasy, Rat(2)) == std::vector<int>({0, 1}));
}

TEST_CASE("integrability bases match the dimension formulas") {
    {
        IntegrabilityBasis ib = integrability_basis(kPex, std::nullopt);
        CHECK(ib.count == 4);
        CHECK(ib.lower == std::vector<int>({2, 6, 10}));
        CHECK(ib.upper == std::vector<int>({5, 7, 10}));
    }
    {
        IntegrabilityBasis ib = integrability_basis(kPex, Rat(3));
        CHECK(ib.count == dim_Ip_quotient(kPex, Rat(3)));
        CHECK(ib.order == std::vector<int>({0, 2, 1}));
        CHECK(ib.lower == std::vector<int>({2, 5, 8}));
        CHECK(ib.upper == std::vector<int>({5, 7, 10}));
    }
    {
        // single branch {(1,x)} at p=2: one element, bounds l=1, m=2
        IntegrabilityBasis ib = integrability_basis(make_model({{1, {1}}}), Rat(2));
        CHECK(ib.count == 1);
        CHECK(ib.lower == std::vector<int>({1}));
        CHECK(ib.upper == std::vector<int>({2}));
    }
    for (const auto& p : std::vector<std::optional<Rat>>{Rat(1), rat(5, 4), rat(3, 2), Rat(2),
                                                         Rat(3), Rat(9), std::nullopt}) {
        IntegrabilityBasis ib = integrability_basis(kPex, p);
        CHECK(ib.count == dim_Ip_quotient(kPex, p));
    }
}

TEST_CASE("basis elements pass membership; one power below fails") {
    for (const auto& pv : std::vector<std::optional<Rat>>{Rat(2), Rat(3)}) {
        IntegrabilityBasis ib = integrability_basis(kEasy, pv);
        Rat p = *pv;
        for (size_t pos = 0; pos < ib.lower.size(); ++pos) {
            // build x^l F_pos as a polynomial truncation
            auto build = [&](int power) {
                BiPoly q;
                const auto& f = ib.qb.exact.f[pos];
                for (size_t k = 0; k < f.yc.size(); ++k)
                    for (int j = 0; j < ib.qb.trunc - power; ++j) {
                        GaussianRational c = f.yc[k].c[static_cast<size_t>(j)];
                        if (!(c == GaussianRational{}))
                            q.add_term(j + power, static_cast<int>(k), c);
                    }
                return q;
            };
            if (ib.lower[pos] < ib.upper[pos]) {
                CHECK(membership_via_coordinates(build(ib.lower[pos]), kEasy, p));
                CHECK(is_in_Lp(build(ib.lower[pos]), kEasy, p).verdict);
            }
            if (ib.lower[pos] > 0) {
                CHECK(!membership_via_coordinates(build(ib.lower[pos] - 1), kEasy, p));
                CHECK(!is_in_Lp(build(ib.lower[pos] - 1), kEasy, p).verdict);
            }
        }
    }
}

TEST_CASE("three-way equivalence on a small sweep") {
    std::mt19937 rng(59);
    std::uniform_int_distribution<int> cf(-2, 2), dx(0, 3), dy(0, 2);
    for (const LocalModel& m : {kEasy, make_model({{1, {}}, {2, {1}}})}) {
        int trunc = default_truncation(m);
        ProperTResult pt = find_proper_t(m, trunc);
        for (int it = 0; it < 8; ++it) {
            BiPoly q;
            for (int k = 0; k < 2; ++k) q.add_term(dx(rng), dy(rng), gq(cf(rng), cf(rng)));
            if (q.is_zero()) q = BiPoly::var_x();
            for (const Rat& p : {Rat(1), rat(3, 2), Rat(2), Rat(5)}) {
                bool direct = is_in_Lp(q, m, p).verdict;
                CHECK(membership_via_branches(q, m, p, pt.sys, pt.cert) == direct);
                CHECK(membership_via_coordinates(q, m, p, trunc) == direct);
            }
        }
    }
}
