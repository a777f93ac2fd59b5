#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "stablefrac/branches.hpp"
#include "stablefrac/parser.hpp"

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
const LocalModel kExex = make_model({{1, {1}}, {2, {1}}});

} // namespace

TEST_CASE("single-branch series solves A+tB exactly") {
    LocalModel m = make_model({{1, {}}});
    for (long t : {0L, 1L, 5L, -3L}) {
        BranchSystem sys = branch_series(m, Rat(t), 8);
        REQUIRE(sys.count() == 1);
        CHECK(!sys.numeric);
        const XSeries<Rat>& a = sys.exact[0];
        CHECK(a.c[2] == Rat(-t));
        for (int k = 0; k < 8; ++k)
            if (k != 2) CHECK(a.c[static_cast<size_t>(k)] == Rat(0));
    }
}

TEST_CASE("easy2branch series at t=0 and the residual property") {
    BranchSystem sys = branch_series(kEasy, Rat(0), 9);
    REQUIRE(sys.count() == 2);
    REQUIRE(!sys.numeric);
    // branches of y^2+3xy+2x^2-x^4: -x + x^3 - ... and -2x - x^3 + ...
    std::vector<XSeries<Rat>> br = sys.exact;
    std::sort(br.begin(), br.end(),
              [](const XSeries<Rat>& a, const XSeries<Rat>& b) { return a.c[1] > b.c[1]; });
    CHECK(br[0].c[1] == Rat(-1));
    CHECK(br[0].c[2] == Rat(0));
    CHECK(br[0].c[3] == Rat(1));
    CHECK(br[1].c[1] == Rat(-2));
    CHECK(br[1].c[2] == Rat(0));
    CHECK(br[1].c[3] == Rat(-1));

    auto [a, b] = real_imag_parts(build_P_from_model(kEasy));
    for (const auto& s : sys.exact) {
        XSeries<GaussianRational> res = compose_on_branch(a, s);
        CHECK(res.all_zero());
    }
}

TEST_CASE("residual property on random models and t") {
    std::mt19937 rng(43);
    std::uniform_int_distribution<int> md(1, 3), ld(1, 2), cd(-2, 2), td(-4, 4);
    for (int it = 0; it < 20; ++it) {
        LocalModel m;
        int n = md(rng);
        for (int j = 0; j < n; ++j) {
            BranchDatumT<Rat> d;
            d.L = ld(rng);
            Poly1<Rat> q;
            q.c.push_back(Rat(0));
            for (int k = 1; k < 2 * d.L; ++k) q.c.push_back(Rat(cd(rng)));
            q.trim();
            d.q = q;
            m.branches.push_back(std::move(d));
        }
        Rat t(td(rng));
        int trunc = default_truncation(m);
        BranchSystem sys;
        try {
            sys = branch_series(m, t, trunc);
        } catch (const Inconclusive&) {
            continue;  // pathological t; the proper-t search avoids these
        }
        auto [a, b] = real_imag_parts(build_P_from_model(m));
        BiPoly w = a + b * GaussianRational(t);
        if (!sys.numeric) {
            for (const auto& s : sys.exact)
                CHECK(compose_on_branch(w, s).all_zero());
        } else {
            BiPolyBall wb = promote(w);
            for (const auto& s : sys.ball) {
                auto res = compose_on_branch(wb, s);
                for (const auto& c : res.c)
                    CHECK(zero_status(c) != ZeroStatus::NonZero);
            }
        }
    }
}

TEST_CASE("exex model: t=0 rejected, t=1 certified with exact tails") {
    CHECK(!is_proper(kExex, Rat(0), 6).proper);

    BranchSystem sys = branch_series(kExex, Rat(1), 6);
    ProperCheck chk = is_proper(kExex, sys);
    REQUIRE(chk.proper);
    CHECK(!sys.numeric);
    // contact between the branches is O_12 = min(inf, 2, 4) = 2
    CHECK(chk.cert.contacts[0][1] == 2);

    for (size_t k = 0; k < sys.exact.size(); ++k) {
        const XSeries<Rat>& a = sys.exact[k];
        if (chk.cert.matched[k] == 0) {
            CHECK(a.c[1] == Rat(-1));
            CHECK(a.c[2] == Rat(-1));
            CHECK(a.c[3] == Rat(0));
            CHECK(a.c[4] == Rat(-2));
        } else {
            CHECK(a.c[1] == Rat(-1));
            CHECK(a.c[2] == Rat(0));
            CHECK(a.c[3] == Rat(0));
            CHECK(a.c[4] == Rat(1));
        }
    }
}

TEST_CASE("easy2branch certifies every t, including 0") {
    for (long t : {0L, 1L, -2L, 7L}) {
        ProperCheck chk = is_proper(kEasy, Rat(t), default_truncation(kEasy));
        CHECK(chk.proper);
    }
}

TEST_CASE("bvanish orders on the worked examples") {
    {
        LocalModel m = make_model({{1, {}}, {2, {}}});
        ProperTResult pt = find_proper_t(m, default_truncation(m));
        BvanishReport rep = verify_bvanish(m, pt.sys, pt.cert);
        CHECK(rep.ok);
        std::vector<int> by_datum(2);
        for (size_t b = 0; b < rep.b_orders.size(); ++b)
            by_datum[static_cast<size_t>(pt.cert.matched[b])] = rep.b_orders[b];
        CHECK(by_datum == std::vector<int>({4, 6}));
    }
    {
        BranchSystem sys = branch_series(kEasy, Rat(0), default_truncation(kEasy));
        ProperCheck chk = is_proper(kEasy, sys);
        REQUIRE(chk.proper);
        BvanishReport rep = verify_bvanish(kEasy, sys, chk.cert);
        CHECK(rep.ok);
        CHECK(rep.b_orders == std::vector<int>({3, 3}));
        CHECK(rep.dy_orders == std::vector<int>({1, 1}));
    }
    {
        LocalModel m = make_model({{1, {1}}});
        ProperTResult pt = find_proper_t(m, default_truncation(m));
        BvanishReport rep = verify_bvanish(m, pt.sys, pt.cert);
        CHECK(rep.ok);
        CHECK(rep.b_orders == std::vector<int>({2}));
        CHECK(rep.dy_orders == std::vector<int>({0}));
    }
}

TEST_CASE("find_proper_t lands on the first good candidate") {
    ProperTResult pt = find_proper_t(kEasy, default_truncation(kEasy));
    CHECK(pt.t == Rat(1));
    ProperTResult pt2 = find_proper_t(kExex, default_truncation(kExex));
    CHECK(pt2.t == Rat(1));
    ProperTResult pt3 = find_proper_t(make_model({{1, {}}}), 8);
    CHECK(pt3.t == Rat(1));
}

TEST_CASE("repeated data run in certified ball mode and separate properly") {
    LocalModel m = make_model({{1, {}}, {1, {}}});
    int trunc = default_truncation(m);
    BranchSystem sys = branch_series(m, Rat(1), trunc);
    CHECK(sys.numeric);
    REQUIRE(sys.count() == 2);
    ProperCheck chk = is_proper(m, sys);
    CHECK(chk.proper);

    // distinct-value property: the x^2-coefficient sets at two proper t are disjoint
    BranchSystem sys2 = branch_series(m, Rat(2), trunc);
    REQUIRE(is_proper(m, sys2).proper);
    for (const auto& s1 : sys.ball)
        for (const auto& s2 : sys2.ball) {
            Ball diff = s1.c[2] - s2.c[2];
            CHECK(zero_status(diff) == ZeroStatus::NonZero);
        }
}

TEST_CASE("membership via branches agrees with the datum test") {
    int trunc = default_truncation(kEasy);
    ProperTResult pt = find_proper_t(kEasy, trunc);
    for (const std::string& expr : {"1", "x", "x^2", "y", "y+x", "x*y", "(y+x)*(y+2*x)"}) {
        BiPoly q = parse_halfplane(expr);
        for (const Rat& p : {Rat(1), rat(3, 2), Rat(2), Rat(3)}) {
            bool via = membership_via_branches(q, kEasy, p, pt.sys, pt.cert);
            CHECK(via == is_in_Lp(q, kEasy, p).verdict);
        }
    }
    // a multiple of P composes to the zero series and passes vacuously
    BiPoly p_poly = build_P_from_model(kEasy);
    CHECK(membership_via_branches(p_poly, kEasy, Rat(50), pt.sys, pt.cert));
}
