#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <complex>
#include <random>

#include "stablefrac/jsonio.hpp"
#include "stablefrac/parser.hpp"
#include "stablefrac/transfer.hpp"

using namespace stablefrac;

TEST_CASE("cayley transfer of the first example") {
    TransferResult tr = torus_to_halfplane(parse_disk("2-z-w"));
    CHECK(tr.half_plane == parse_halfplane("-2*i*(x+y-2*i*x*y)"));
    CHECK(tr.deg_z == 1);
    CHECK(tr.deg_w == 1);
    CHECK(tr.vanishes_at_center);
}

TEST_CASE("transfer of constants and 1 - zw") {
    TransferResult c = torus_to_halfplane(parse_disk("1"));
    CHECK(c.half_plane == BiPoly::constant(1));
    CHECK(!c.vanishes_at_center);

    TransferResult zw = torus_to_halfplane(parse_disk("1-z*w"));
    CHECK(zw.half_plane == parse_halfplane("-2*i*(x+y)"));
}

TEST_CASE("clearing identity holds numerically at random rational points") {
    std::mt19937 rng(83);
    std::uniform_int_distribution<int> cf(-3, 3), deg(0, 2);
    for (int it = 0; it < 20; ++it) {
        BiPoly disk;
        for (int k = 0; k < 3; ++k) disk.add_term(deg(rng), deg(rng), gq(cf(rng), cf(rng)));
        if (disk.is_zero()) continue;
        TransferResult tr = torus_to_halfplane(disk);
        std::uniform_real_distribution<double> xs(-2.0, 2.0);
        using CD = std::complex<double>;
        auto eval_d = [](const BiPoly& p, CD x, CD y) {
            CD acc = 0;
            for (const auto& [k, v] : p.terms) {
                CD c(v.re.get_d(), v.im.get_d());
                acc += c * std::pow(x, k.first) * std::pow(y, k.second);
            }
            return acc;
        };
        for (int pt = 0; pt < 20; ++pt) {
            double x = xs(rng), y = xs(rng);
            CD i(0, 1);
            CD z = (CD(1) + i * x) / (CD(1) - i * x);
            CD w = (CD(1) + i * y) / (CD(1) - i * y);
            CD lhs = eval_d(tr.half_plane, x, y);
            CD rhs = std::pow(CD(1) - i * x, tr.deg_z) * std::pow(CD(1) - i * y, tr.deg_w) *
                     eval_d(disk, z, w);
            CHECK(std::abs(lhs - rhs) < 1e-9 * (1 + std::abs(rhs)));
        }
    }
}

TEST_CASE("membership through the disk pipeline: the first-example family") {
    BiPoly p = parse_disk("2-z-w");
    CHECK(analyze_disk(p, parse_disk("1"), Rat(1)).report.verdict);
    CHECK(!analyze_disk(p, parse_disk("1"), rat(3, 2)).report.verdict);
    CHECK(analyze_disk(p, parse_disk("1-z"), Rat(2)).report.verdict);
    CHECK(!analyze_disk(p, parse_disk("1-z"), Rat(3)).report.verdict);
    CHECK(analyze_disk(p, parse_disk("(1-z)*(1-w)"), Rat(3)).report.verdict);
    CHECK(!analyze_disk(p, parse_disk("w-z"), Rat(3)).report.verdict);
}

TEST_CASE("model JSON round trip and canonical rationals") {
    LocalModel m;
    m.branches.push_back({1, Poly1<Rat>({Rat(0), rat(3, 2)})});
    m.branches.push_back({2, Poly1<Rat>({Rat(0), Rat(-1), Rat(0), rat(1, 3)})});
    Json j = model_to_json(m);
    LocalModel back = model_from_json(j);
    REQUIRE(back.size() == 2);
    CHECK(back.branches[0].L == 1);
    CHECK(back.branches[0].q.coeff(1) == rat(3, 2));
    CHECK(back.branches[1].q.coeff(3) == rat(1, 3));
    CHECK(model_to_json(back) == j);
    CHECK(j.dump() == model_to_json(back).dump());

    CHECK_THROWS_AS(model_from_json(Json::parse("{\"branches\":[{\"L\":0,\"q\":[]}]}")),
                    InputError);
}

TEST_CASE("membership report serialization is deterministic") {
    LocalModel m;
    m.branches.push_back({1, Poly1<Rat>({Rat(0), Rat(1)})});
    MembershipReport rep = is_in_Lp(BiPoly::var_x(), m, rat(3, 2));
    ExponentRange er = lp_threshold(BiPoly::var_x(), m);
    Json a = membership_to_json(rep, er);
    Json b = membership_to_json(is_in_Lp(BiPoly::var_x(), m, rat(3, 2)),
                                lp_threshold(BiPoly::var_x(), m));
    CHECK(a.dump() == b.dump());
    CHECK(a["p"] == "3/2");
    CHECK(a["p_star"] == "3");
    CHECK(a["verdict"] == true);
}
