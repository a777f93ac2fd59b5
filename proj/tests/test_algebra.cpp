#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "stablefrac/parser.hpp"
#include "stablefrac/series.hpp"

using namespace stablefrac;

namespace {

BiPoly rand_poly(std::mt19937& rng, int max_terms = 5) {
    std::uniform_int_distribution<int> terms(1, max_terms), dx(0, 3), dy(0, 3), cf(-4, 4);
    BiPoly p;
    for (int k = 0, n = terms(rng); k < n; ++k)
        p.add_term(dx(rng), dy(rng), gq(cf(rng), cf(rng)));
    return p;
}

} // namespace

TEST_CASE("gaussian rational arithmetic is exact and canonical") {
    GaussianRational a = gq(rat(1, 2), rat(-3, 4));
    GaussianRational b = gq(rat(2, 4), rat(-6, 8));
    CHECK(a == b);
    GaussianRational c = a * gq(0, 1);  // multiply by i
    CHECK(c == gq(rat(3, 4), rat(1, 2)));
    CHECK(a / a == gq(1));
    CHECK((a - a) == gq(0));
}

TEST_CASE("reflect conjugates coefficients and is an involution") {
    BiPoly p = parse_halfplane("y+x+i*x^2");
    BiPoly r = p.reflected();
    CHECK(r == parse_halfplane("y+x-i*x^2"));

    BiPoly real_p = parse_halfplane("y^2+3*x*y-7");
    CHECK(real_p.reflected() == real_p);

    BiPoly prod = parse_halfplane("(x+y-i*x*y)*(2*x+y-i*x*y)");
    CHECK(prod.reflected() == parse_halfplane("(x+y+i*x*y)*(2*x+y+i*x*y)"));

    std::mt19937 rng(7);
    for (int it = 0; it < 20; ++it) {
        BiPoly q = rand_poly(rng);
        CHECK(q.reflected().reflected() == q);
    }
}

TEST_CASE("real and imaginary parts reconstruct the polynomial") {
    BiPoly p = parse_halfplane("(y+x+i*x^2)*(y+2*x+i*x^2)");
    auto [a, b] = real_imag_parts(p);
    CHECK(a == parse_halfplane("y^2+3*x*y+2*x^2-x^4"));
    CHECK(b == parse_halfplane("x^2*(2*y+3*x)"));

    BiPoly p2 = parse_halfplane("(y+i*x^2)*(y+i*x^4)");
    auto [a2, b2] = real_imag_parts(p2);
    CHECK(a2 == parse_halfplane("(y-x^3)*(y+x^3)"));
    CHECK(b2 == parse_halfplane("x^2*(1+x^2)*y"));

    BiPoly real_p = parse_halfplane("y^3-x*y+x^2");
    auto [a3, b3] = real_imag_parts(real_p);
    CHECK(a3 == real_p);
    CHECK(b3.is_zero());

    std::mt19937 rng(11);
    for (int it = 0; it < 20; ++it) {
        BiPoly q = rand_poly(rng);
        auto [ar, br] = real_imag_parts(q);
        CHECK(ar + br * GaussianRational::i_unit() == q);
    }
}

TEST_CASE("order of vanishing honors the truncation discipline") {
    XSeries<Rat> s(10);
    s.c[2] = Rat(1);
    s.c[5] = Rat(1);
    CHECK(s.order_strict() == 2);

    XSeries<Rat> zero(10);
    CHECK(!zero.order().has_value());
    CHECK_THROWS_AS(zero.order_strict(), Inconclusive);

    // q1 - q2 for the pexample data (q = 0 vs q = x)
    Poly1<Rat> q1, q2({Rat(0), Rat(1)});
    Poly1<Rat> diff = q2 - q1;
    CHECK(diff.order().value() == 1);
}

TEST_CASE("order is multiplicative when both factors are conclusive") {
    std::mt19937 rng(3);
    std::uniform_int_distribution<int> ord(0, 4), cf(-3, 3);
    for (int it = 0; it < 25; ++it) {
        XSeries<Rat> f(16), g(16);
        int of = ord(rng), og = ord(rng);
        f.c[static_cast<size_t>(of)] = Rat(1 + std::abs(cf(rng)));
        g.c[static_cast<size_t>(og)] = Rat(1 + std::abs(cf(rng)));
        for (int k = 0; k < 16; ++k) {
            if (k > of) f.c[static_cast<size_t>(k)] = Rat(cf(rng));
            if (k > og) g.c[static_cast<size_t>(k)] = Rat(cf(rng));
        }
        CHECK((f * g).order_strict() == of + og);
    }
}

TEST_CASE("weierstrass division against a y-monic model polynomial") {
    BiPoly p = parse_halfplane("(y+x+i*x^2)*(y+2*x+i*x^2)");

    SUBCASE("multiple reduces to zero") {
        auto [q, r] = divide_y(p, p);
        CHECK(r.is_zero());
        CHECK(q == BiPoly::constant(1));
    }
    SUBCASE("multiple plus constant leaves the constant") {
        BiPoly input = BiPoly::var_y() * p + BiPoly::constant(1);
        auto [q, r] = divide_y(input, p);
        CHECK(r == BiPoly::constant(1));
    }
    SUBCASE("y^2 remainder from the worked example") {
        BiPoly y2 = parse_halfplane("y^2");
        auto [q, r] = divide_y(y2, p);
        CHECK(r == parse_halfplane("-(3*x+2*i*x^2)*y-(2*x^2+3*i*x^3-x^4)"));
        CHECK(q == BiPoly::constant(1));
        CHECK(y2 - (q * p + r) == BiPoly());
    }
    SUBCASE("division residual identity on random input") {
        std::mt19937 rng(5);
        for (int it = 0; it < 15; ++it) {
            BiPoly q = rand_poly(rng, 6);
            auto [quot, rem] = divide_y(q, p);
            CHECK(rem.deg_y() < p.deg_y());
            CHECK(q - (quot * p + rem) == BiPoly());
        }
    }
    SUBCASE("non-monic divisor is rejected") {
        BiPoly bad = parse_halfplane("x*y+1");
        CHECK_THROWS_AS(divide_y(BiPoly::var_y(), bad), NotMonicAtOrigin);
    }
}

TEST_CASE("series weierstrass division mirrors the exact polynomial division") {
    BiPoly p = parse_halfplane("(y+x+i*x^2)*(y+2*x+i*x^2)");
    BiPoly q = parse_halfplane("y^3+x*y-2+i*x^5");
    const int trunc = 12;
    auto ps = yseries_from_bipoly(p, trunc);
    auto qs = yseries_from_bipoly(q, trunc);
    auto [quot, rem] = weierstrass_divide(qs, ps);
    auto [quot_exact, rem_exact] = divide_y(q, p);
    auto rem_series = yseries_from_bipoly(rem_exact, trunc);
    auto coeff_at = [trunc](const YSeriesPoly<GaussianRational>& f, int k, int j) {
        if (k > f.deg()) return GaussianRational{};
        return f.yc[static_cast<size_t>(k)].c[static_cast<size_t>(j)];
    };
    for (int k = 0; k <= std::max(rem.deg(), rem_series.deg()); ++k)
        for (int j = 0; j < trunc; ++j)
            CHECK(coeff_at(rem, k, j) == coeff_at(rem_series, k, j));
}

TEST_CASE("series inverse and valuation division") {
    XSeries<Rat> u(8);
    u.c[0] = Rat(2);
    u.c[1] = Rat(-1);
    XSeries<Rat> inv = u.inverse();
    XSeries<Rat> one = u * inv;
    CHECK(one.c[0] == Rat(1));
    for (int k = 1; k < 8; ++k) CHECK(one.c[static_cast<size_t>(k)] == Rat(0));

    XSeries<Rat> a(8), b(8);
    a.c[3] = Rat(4);
    b.c[2] = Rat(2);
    b.c[3] = Rat(2);
    XSeries<Rat> d = divide_known_valuation(a, b, 2);
    CHECK(d.c[1] == Rat(2));  // 4x^3 / (2x^2(1+x)) = 2x(1 - x + ...)
    CHECK(d.c[2] == Rat(-2));
}

TEST_CASE("ball arithmetic certifies zero statuses conservatively") {
    Ball one(1);
    Ball tiny = Ball(rat(1, 1000000));
    CHECK(zero_status(one) == ZeroStatus::NonZero);
    CHECK(zero_status(one - one) == ZeroStatus::Zero);
    CHECK(zero_status(tiny) == ZeroStatus::NonZero);

    Ball wide(HpFloat(0), HpFloat("1e-10"));
    CHECK(zero_status(wide) == ZeroStatus::Unknown);
    CHECK_THROWS_AS(wide.cert_sign(), NumericInconclusive);

    // radius grows but stays far below the threshold over many operations
    Ball acc(1);
    for (int k = 0; k < 2000; ++k) acc = acc * Ball(rat(3, 7)) + Ball(rat(1, 3));
    CHECK(zero_status(acc) == ZeroStatus::NonZero);
}

TEST_CASE("parser handles the published grammar and rejects mixed variables") {
    CHECK(parse_halfplane("(y+x+i*x^2)*(y+2*x+i*x^2)") ==
          parse_halfplane("y^2+3*x*y+2*x^2-x^4 + i*(2*x^2*y+3*x^3)"));
    CHECK(parse_halfplane("3/2") == BiPoly::constant(gq(rat(3, 2))));
    CHECK(parse_halfplane("x^2") == BiPoly::monomial(2, 0));
    CHECK(parse_disk("2-z-w") == parse_disk("2 - z - w"));
    CHECK_THROWS_AS(parse_expression("x+z"), SyntaxError);
    CHECK_THROWS_AS(parse_expression("x +"), SyntaxError);
    CHECK_THROWS_AS(parse_expression("(x"), SyntaxError);
    CHECK_THROWS_AS(parse_expression("x/2"), SyntaxError);
    CHECK_THROWS_AS(parse_halfplane("z+w"), InputError);
}
