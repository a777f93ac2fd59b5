#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "stablefrac/localmodel.hpp"
#include "stablefrac/parser.hpp"
#include "stablefrac/transfer.hpp"

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

LocalModel random_model(std::mt19937& rng) {
    std::uniform_int_distribution<int> md(1, 4), ld(1, 3), cd(-3, 3);
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
    return m;
}

bool same_model(const LocalModel& a, const LocalModel& b) {
    if (a.size() != b.size()) return false;
    for (int k = 0; k < a.size(); ++k) {
        if (a.branches[static_cast<size_t>(k)].L != b.branches[static_cast<size_t>(k)].L) return false;
        if (!(a.branches[static_cast<size_t>(k)].q - b.branches[static_cast<size_t>(k)].q).is_zero())
            return false;
    }
    return true;
}

} // namespace

TEST_CASE("build_P_from_model expands the product exactly") {
    CHECK(build_P_from_model(make_model({{1, {1}}})) == parse_halfplane("y+x+i*x^2"));
    CHECK(build_P_from_model(make_model({{1, {}}})) == parse_halfplane("y+i*x^2"));
    CHECK(build_P_from_model(make_model({{1, {1}}, {1, {2}}})) ==
          parse_halfplane("(y+x+i*x^2)*(y+2*x+i*x^2)"));
    // P(0, y) = y^M
    BiPoly p = build_P_from_model(make_model({{2, {1, -1}}, {1, {3}}}));
    CHECK(p.coeff(0, 2) == gq(1));
    CHECK(zero_status(p.eval(gq(0), gq(0))) == ZeroStatus::Zero);
}

TEST_CASE("contact matrix entries follow the min formula") {
    LocalModel pex = make_model({{1, {}}, {4, {1}}, {2, {}}});
    ContactMatrix cm = contact_matrix(pex);
    CHECK(cm(0, 1) == 1);
    CHECK(cm(0, 2) == 2);
    CHECK(cm(1, 2) == 1);
    CHECK(cm(0, 0) == 2);
    CHECK(cm(1, 1) == 8);
    CHECK(cm(2, 2) == 4);

    ContactMatrix e2 = contact_matrix(make_model({{1, {1}}, {1, {2}}}));
    CHECK(e2(0, 1) == 1);
    CHECK(e2(0, 0) == 2);
    CHECK(e2(1, 1) == 2);

    ContactMatrix single = contact_matrix(make_model({{3, {1, 0, 2}}}));
    CHECK(single.size() == 1);
    CHECK(single(0, 0) == 6);
}

TEST_CASE("intersection multiplicity matches the worked examples and is even") {
    CHECK(intersection_multiplicity(make_model({{1, {1}}, {1, {2}}})) == 6);
    CHECK(intersection_multiplicity(make_model({{1, {}}, {2, {}}})) == 10);
    CHECK(intersection_multiplicity(make_model({{1, {}}, {4, {1}}, {2, {}}})) == 22);

    std::mt19937 rng(13);
    for (int it = 0; it < 50; ++it) {
        LocalModel m = random_model(rng);
        int im = intersection_multiplicity(m);
        CHECK(im % 2 == 0);
        ContactMatrix cm = contact_matrix(m);
        for (int i = 0; i < m.size(); ++i) {
            CHECK(cm(i, i) == 2 * m.branches[static_cast<size_t>(i)].L);
            for (int j = 0; j < m.size(); ++j) CHECK(cm(i, j) == cm(j, i));
        }
    }
}

TEST_CASE("extraction recovers the transferred first example") {
    BiPoly p = torus_to_halfplane(parse_disk("2-z-w")).half_plane;
    Extraction ex = extract_local_model(p);
    CHECK(!ex.numeric);
    REQUIRE(ex.model.size() == 1);
    CHECK(ex.model.branches[0].L == 1);
    CHECK(ex.model.branches[0].q.degree() == 1);
    CHECK(ex.model.branches[0].q.coeff(1) == Rat(1));
    CHECK(!ex.weak_stability_warning);
}

TEST_CASE("extraction of the two-branch product") {
    BiPoly p = parse_halfplane("(x+y-i*x*y)*(2*x+y-i*x*y)");
    Extraction ex = extract_local_model(p);
    CHECK(!ex.numeric);
    REQUIRE(ex.model.size() == 2);
    CHECK(same_model(ex.model, make_model({{1, {1}}, {1, {2}}})));
}

TEST_CASE("extraction round-trips model polynomials") {
    std::mt19937 rng(17);
    int done = 0;
    while (done < 25) {
        LocalModel m = random_model(rng);
        // extraction sorts canonically; compare against the sorted original
        LocalModel sorted = m;
        std::sort(sorted.branches.begin(), sorted.branches.end(),
                  [](const BranchDatumT<Rat>& a, const BranchDatumT<Rat>& b) {
                      if (a.L != b.L) return a.L < b.L;
                      size_t n = std::max(a.q.c.size(), b.q.c.size());
                      for (size_t k = 0; k < n; ++k) {
                          Rat av = k < a.q.c.size() ? a.q.c[k] : Rat(0);
                          Rat bv = k < b.q.c.size() ? b.q.c[k] : Rat(0);
                          if (av != bv) return av < bv;
                      }
                      return false;
                  });
        Extraction ex = extract_local_model(build_P_from_model(m));
        REQUIRE(!ex.numeric);
        CHECK(same_model(ex.model, sorted));
        ++done;
    }
}

TEST_CASE("extraction flags numeric mode on irrational branch data") {
    // (y + a x + ix^2)(y - a x + ix^2) with a = sqrt(2):
    // expand: y^2 + 2i x^2 y - 2x^2 - x^4
    BiPoly p = parse_halfplane("y^2 + 2*i*x^2*y - 2*x^2 - x^4");
    Extraction ex = extract_local_model(p);
    CHECK(ex.numeric);
    REQUIRE(ex.model_ball.size() == 2);
    for (const auto& b : ex.model_ball.branches) {
        CHECK(b.L == 1);
        // q = +- sqrt(2) x
        double c1 = std::abs(b.q.coeff(1).to_double());
        CHECK(c1 == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
    }
    ContactMatrix cm = contact_matrix(ex.model_ball);
    CHECK(cm(0, 1) == 1);
    CHECK(intersection_multiplicity(ex.model_ball) == 6);
}

TEST_CASE("curve-of-zeros inputs are rejected, not analyzed") {
    // (y+x) is a common factor with the reflection through the origin
    BiPoly p = parse_halfplane("(y+x)*(y+x+i*x^2)");
    CHECK_THROWS_AS(extract_local_model(p), CommonFactor);
    // common factor away from the origin is not a local obstruction
    BiPoly q = parse_halfplane("(2+x)*(y+x+i*x^2)");
    Extraction ex = extract_local_model(q);
    CHECK(same_model(ex.model, make_model({{1, {1}}})));
}

TEST_CASE("inputs violating stability are caught") {
    CHECK_THROWS_AS(extract_local_model(parse_halfplane("y-x-i*x^2")), NotStable);
    CHECK_THROWS_AS(extract_local_model(parse_halfplane("x^2+y^2")), Error);
    CHECK_THROWS_AS(extract_local_model(parse_halfplane("1+x+y")), InputError);
}

TEST_CASE("weak-stability diagnostic flag for q'(0) <= 0") {
    Extraction ex = extract_local_model(build_P_from_model(make_model({{1, {-1}}})));
    CHECK(ex.weak_stability_warning);
    Extraction ex2 = extract_local_model(build_P_from_model(make_model({{1, {1}}})));
    CHECK(!ex2.weak_stability_warning);
}

TEST_CASE("stability sampling probe") {
    BiPoly good = torus_to_halfplane(parse_disk("2-z-w")).half_plane;
    CHECK(check_stability_sample(good).stable);

    StabilityWitness w = check_stability_sample(parse_halfplane("y-x-i*x^2"));
    CHECK(!w.stable);
    CHECK(w.y_im > 0);

    CHECK(check_stability_sample(BiPoly::constant(1)).stable);
}
