#include "stablefrac/acceptance.hpp"

#include <functional>
#include <ostream>
#include <random>
#include <sstream>

#include "stablefrac/numverify.hpp"
#include "stablefrac/onevar.hpp"
#include "stablefrac/parser.hpp"
#include "stablefrac/quotient.hpp"
#include "stablefrac/transfer.hpp"

namespace stablefrac::acceptance {

namespace {

using numverify::Verdict;

LocalModel model_1x() {
    LocalModel m;
    m.branches.push_back({1, Poly1<Rat>({Rat(0), Rat(1)})});
    return m;
}

LocalModel model_easy2branch() {
    LocalModel m;
    m.branches.push_back({1, Poly1<Rat>({Rat(0), Rat(1)})});
    m.branches.push_back({1, Poly1<Rat>({Rat(0), Rat(2)})});
    return m;
}

LocalModel model_pexample() {  // (y+ix^2)(y+x+ix^8)(y+ix^4)
    LocalModel m;
    m.branches.push_back({1, Poly1<Rat>()});
    m.branches.push_back({4, Poly1<Rat>({Rat(0), Rat(1)})});
    m.branches.push_back({2, Poly1<Rat>()});
    return m;
}

LocalModel model_two_zero() {  // (y+ix^2)(y+ix^4)
    LocalModel m;
    m.branches.push_back({1, Poly1<Rat>()});
    m.branches.push_back({2, Poly1<Rat>()});
    return m;
}

LocalModel model_exex() {  // (y+x+ix^2)(y+x+ix^4)
    LocalModel m;
    m.branches.push_back({1, Poly1<Rat>({Rat(0), Rat(1)})});
    m.branches.push_back({2, Poly1<Rat>({Rat(0), Rat(1)})});
    return m;
}

LocalModel random_model(std::mt19937& rng, int max_m, int max_l, bool distinct_data) {
    std::uniform_int_distribution<int> md(1, max_m), ld(1, max_l), cd(-3, 3), dd(1, 3);
    while (true) {
        LocalModel m;
        int n = md(rng);
        for (int j = 0; j < n; ++j) {
            BranchDatumT<Rat> d;
            d.L = ld(rng);
            Poly1<Rat> q;
            q.c.push_back(Rat(0));
            for (int k = 1; k < 2 * d.L; ++k) q.c.push_back(rat(cd(rng), dd(rng)));
            q.trim();
            d.q = q;
            m.branches.push_back(std::move(d));
        }
        if (distinct_data) {
            bool dup = false;
            for (size_t i = 0; i < m.branches.size(); ++i)
                for (size_t j = i + 1; j < m.branches.size(); ++j)
                    if (m.branches[i].L == m.branches[j].L &&
                        (m.branches[i].q - m.branches[j].q).is_zero())
                        dup = true;
            if (dup) continue;
        }
        return m;
    }
}

BiPoly random_numerator(std::mt19937& rng) {
    std::uniform_int_distribution<int> terms(1, 4), dx(0, 4), dy(0, 2), cf(-3, 3);
    BiPoly q;
    int n = terms(rng);
    for (int k = 0; k < n; ++k) {
        int c1 = cf(rng), c2 = cf(rng);
        if (c1 == 0 && c2 == 0) c1 = 1;
        q.add_term(dx(rng), dy(rng), gq(c1, c2));
    }
    if (q.is_zero()) q = BiPoly::constant(1);
    return q;
}

template <class F>
auto with_doubled_retry(F&& f, int trunc) {
    try {
        return f(trunc);
    } catch (const Inconclusive&) {
        return f(2 * trunc);
    }
}

struct Check {
    bool ok = true;
    std::ostringstream detail;

    void expect(bool cond, const std::string& what) {
        if (!cond) {
            ok = false;
            if (detail.tellp() > 0) detail << "; ";
            detail << what;
        }
    }
};

CriterionResult criterion_1() {
    Check c;
    LocalModel m = model_1x();
    BiPoly one = BiPoly::constant(1);
    BiPoly x = BiPoly::var_x();
    c.expect(is_in_Lp(one, m, Rat(1)).verdict, "Q=1 at p=1");
    c.expect(is_in_Lp(one, m, rat(7, 5)).verdict, "Q=1 at p=7/5");
    c.expect(!is_in_Lp(one, m, rat(3, 2)).verdict, "Q=1 at p=3/2 must fail");
    c.expect(!is_in_Lp(one, m, Rat(2)).verdict, "Q=1 at p=2 must fail");
    c.expect(is_in_Lp(x, m, rat(3, 2)).verdict, "Q=x at p=3/2");
    c.expect(is_in_Lp(x, m, rat(29, 10)).verdict, "Q=x at p=29/10");
    c.expect(!is_in_Lp(x, m, Rat(3)).verdict, "Q=x at p=3 must fail");
    c.expect(!is_in_Lp(x, m, Rat(10)).verdict, "Q=x at p=10 must fail");

    BiPoly p_disk = parse_disk("2-z-w");
    c.expect(!analyze_disk(p_disk, parse_disk("1-z"), Rat(3)).report.verdict,
             "disk Q=1-z at p=3 must fail");
    // first-order condition dQ/dz(1,1) = dQ/dw(1,1): satisfied by (1-z)(1-w)
    c.expect(analyze_disk(p_disk, parse_disk("(1-z)*(1-w)"), Rat(3)).report.verdict,
             "disk Q=(1-z)(1-w) at p=3");
    c.expect(analyze_disk(p_disk, parse_disk("(1-z)+(1-w)"), Rat(3)).report.verdict,
             "disk Q=(1-z)+(1-w) at p=3");
    c.expect(!analyze_disk(p_disk, parse_disk("w-z"), Rat(3)).report.verdict,
             "disk Q=w-z violates the first-order condition");
    return {1, "example 1.1 thresholds and first-order condition", c.ok, c.detail.str()};
}

CriterionResult criterion_2() {
    Check c;
    BiPoly q = parse_halfplane("(y+x+x^2+i*x^4)*(y+x+i*x^4)");
    Poly1<Rat> qx({Rat(0), Rat(1)});
    c.expect(order_on_datum(3, qx, q) == 5, "O(3,x)");
    c.expect(order_on_datum(4, qx, q) == 6, "O(4,x)");
    c.expect(order_on_datum(2, qx, q) == 4, "O(2,x)");
    c.expect(order_on_datum(1, qx, q) == 2, "O(1,x)");
    return {2, "order-on-datum golden values", c.ok, c.detail.str()};
}

CriterionResult criterion_3() {
    Check c;
    LocalModel m = model_pexample();
    int dim54 = dim_Ip_quotient(m, rat(5, 4));
    c.expect(dim54 == 15,
             "dim at 5/4: stated value 15, dimension formula gives " + std::to_string(dim54));
    c.expect(dim_Ip_quotient(m, Rat(3)) == 7, "dim at 3");
    c.expect(dim_Ip_quotient(m, std::nullopt) == 4, "dim at infinity");
    IntegrabilityBasis ib = integrability_basis(m, std::nullopt);
    c.expect(ib.count == 4, "basis count at infinity");
    c.expect(ib.order == std::vector<int>({0, 2, 1}), "relabel order");
    c.expect(ib.lower == std::vector<int>({2, 6, 10}), "lower bounds");
    c.expect(ib.upper == std::vector<int>({5, 7, 10}), "m_k bounds");
    return {3, "pexample dimensions and infinity basis", c.ok, c.detail.str()};
}

CriterionResult criterion_4(unsigned seed) {
    Check c;
    std::mt19937 rng(seed + 4);
    for (int it = 0; it < 200 && c.ok; ++it) {
        LocalModel m = random_model(rng, 4, 4, false);
        int im = intersection_multiplicity(m);
        int dim = dim_Ip_quotient(m, Rat(2));
        c.expect(2 * dim == im, "dim(m,2) != IM/2 at iteration " + std::to_string(it));
    }
    return {4, "L^2 dimension identity on 200 random models", c.ok, c.detail.str()};
}

CriterionResult criterion_5() {
    Check c;
    LocalModel m = model_easy2branch();
    c.expect(intersection_multiplicity(m) == 6, "intersection multiplicity");
    int trunc = default_truncation(m);
    ProperTResult pt = find_proper_t(m, trunc);
    QuotientBasis qb = quotient_basis(m, pt.sys, pt.cert);
    c.expect(qb.m_k == std::vector<int>({3, 3}), "m_k = (3,3)");
    IntegrabilityBasis ib = integrability_basis(m, Rat(2));
    c.expect(ib.lower == std::vector<int>({1, 2}), "L^2 orders: c1 >= 1, c2 >= 2");
    for (const std::string& expr :
         {"1", "x", "x^2", "y", "x*y", "y+2*x", "x^2+y*x", "(y+2*x)*(y+x)"}) {
        BiPoly q = parse_halfplane(expr);
        bool direct = is_in_Lp(q, m, Rat(2)).verdict;
        bool coords = membership_via_coordinates(q, m, Rat(2));
        c.expect(direct == coords, "coordinate route disagrees on " + expr);
    }
    return {5, "easy2branch basis and L^2 conditions", c.ok, c.detail.str()};
}

CriterionResult criterion_6() {
    Check c;
    LocalModel m = model_exex();
    int trunc = 6;
    ProperCheck at0 = is_proper(m, Rat(0), trunc);
    c.expect(!at0.proper, "t=0 must be rejected");
    BranchSystem sys = branch_series(m, Rat(1), trunc);
    ProperCheck at1 = is_proper(m, sys);
    c.expect(at1.proper, "t=1 must certify");
    if (at1.proper && !sys.numeric) {
        // tails: datum (1,x) branch = -x - x^2 - 2x^4, datum (2,x) branch = -x + x^4
        for (size_t b = 0; b < sys.exact.size(); ++b) {
            const XSeries<Rat>& a = sys.exact[b];
            std::vector<Rat> want =
                at1.cert.matched[b] == 0
                    ? std::vector<Rat>{Rat(0), Rat(-1), Rat(-1), Rat(0), Rat(-2)}
                    : std::vector<Rat>{Rat(0), Rat(-1), Rat(0), Rat(0), Rat(1)};
            for (size_t k = 0; k < 5; ++k)
                c.expect(a.c[k] == want[k], "tail coefficient x^" + std::to_string(k) +
                                                " of branch " + std::to_string(b));
        }
    } else {
        c.expect(!sys.numeric, "exex expansion should stay exact");
    }
    return {6, "exex proper-t rejection/certification with exact tails", c.ok,
            c.detail.str()};
}

CriterionResult criterion_7() {
    Check c;
    {
        LocalModel m = model_two_zero();
        int trunc = default_truncation(m);
        ProperTResult pt = find_proper_t(m, trunc);
        BvanishReport rep = verify_bvanish(m, pt.sys, pt.cert);
        c.expect(rep.ok, "bvanish equalities on {(1,0),(2,0)}");
        std::vector<int> want{4, 6};
        std::vector<int> got(rep.b_orders.size());
        for (size_t b = 0; b < rep.b_orders.size(); ++b)
            got[static_cast<size_t>(pt.cert.matched[b])] = rep.b_orders[b];
        c.expect(got == want, "B-orders (4,6)");
    }
    {
        LocalModel m = model_easy2branch();
        int trunc = default_truncation(m);
        BranchSystem sys = branch_series(m, Rat(0), trunc);
        ProperCheck chk = is_proper(m, sys);
        c.expect(chk.proper, "t=0 proper on easy2branch");
        if (chk.proper) {
            BvanishReport rep = verify_bvanish(m, sys, chk.cert);
            c.expect(rep.ok, "bvanish equalities at t=0");
            c.expect(rep.b_orders == std::vector<int>({3, 3}), "B-orders (3,3)");
            c.expect(rep.dy_orders == std::vector<int>({1, 1}), "A_y-orders (1,1)");
        }
    }
    return {7, "branch-order verification (Bvanish)", c.ok, c.detail.str()};
}

CriterionResult criterion_8(unsigned seed, bool quick) {
    Check c;
    std::mt19937 rng(seed + 8);
    const std::vector<Rat> ps{Rat(1), rat(5, 4), rat(3, 2), Rat(2), Rat(3), Rat(5)};
    int instances = quick ? 12 : 100;
    for (int it = 0; it < instances && c.ok; ++it) {
        LocalModel m = random_model(rng, 3, 2, true);
        BiPoly q = random_numerator(rng);
        int trunc0 = default_truncation(m);
        std::uniform_int_distribution<size_t> pick(0, ps.size() - 1);
        Rat p = ps[pick(rng)];
        try {
            bool direct = is_in_Lp(q, m, p).verdict;
            bool via_branches = with_doubled_retry(
                [&](int tr) {
                    ProperTResult pt = find_proper_t(m, tr, seed);
                    return membership_via_branches(q, m, p, pt.sys, pt.cert);
                },
                trunc0);
            bool via_coords = with_doubled_retry(
                [&](int tr) { return membership_via_coordinates(q, m, p, tr, seed); },
                trunc0);
            c.expect(direct == via_branches,
                     "branch route disagrees at iteration " + std::to_string(it));
            c.expect(direct == via_coords,
                     "coordinate route disagrees at iteration " + std::to_string(it));
            bool linf = is_in_Linfty(q, m);
            bool prod = product_ideal_membership(q, m);
            c.expect(linf == prod,
                     "product-ideal route disagrees at iteration " + std::to_string(it));
        } catch (const Inconclusive& e) {
            c.expect(false, std::string("unresolved Inconclusive: ") + e.what());
        }
    }
    return {8, "three-way equivalence suite (" + std::to_string(instances) + " instances)",
            c.ok, c.detail.str()};
}

CriterionResult criterion_9(unsigned seed) {
    Check c;
    using namespace onevar;
    {
        PolyD p{{-1, 0}, {0, 2}, {1, 0}};  // (y+i)^2 = y^2 + 2iy - 1
        ParsevalReport rep = parseval_check({{1, 0}}, p, 0.0, 1e-8);
        c.expect(rep.pass, "parseval residual for (y+i)^2");
        c.expect(std::abs(rep.quad_sum - 0.5) < 1e-12, "quadrature sum = 1/2");
        c.expect(std::abs(rep.integral - 0.5) < 1e-8, "integral = 1/2");
    }
    std::mt19937 rng(seed + 9);
    std::uniform_real_distribution<double> re(-1.5, 1.5), im(-1.6, -0.15), ts(-2, 2);
    std::uniform_int_distribution<int> degd(1, 6);
    for (int it = 0; it < 50 && c.ok; ++it) {
        int d = degd(rng);
        PolyD p{{1, 0}};
        for (int k = 0; k < d; ++k) {
            CD root(re(rng), im(rng));
            PolyD next(p.size() + 1, CD(0, 0));
            for (size_t j = 0; j < p.size(); ++j) {
                next[j + 1] += p[j];
                next[j] -= root * p[j];
            }
            p = next;
        }
        c.expect(interlacing_check(p, ts(rng)),
                 "interlacing on random stable polynomial " + std::to_string(it));
    }
    for (double pe : {4.0 / 3.0, 2.0, 4.0}) {
        for (int it = 0; it < 6 && c.ok; ++it) {
            int d = 3;
            PolyD p{{1, 0}};
            for (int k = 0; k < d; ++k) {
                CD root(re(rng), im(rng));
                PolyD next(p.size() + 1, CD(0, 0));
                for (size_t j = 0; j < p.size(); ++j) {
                    next[j + 1] += p[j];
                    next[j] -= root * p[j];
                }
                p = next;
            }
            PolyD q{{re(rng), re(rng)}, {re(rng), 0}};
            SamplingReport rep = sampling_bounds_check(q, p, pe, ts(rng));
            c.expect(rep.upper_ok && rep.lower_ok,
                     "sampling inequality failed at p=" + std::to_string(pe));
        }
    }
    {
        std::mt19937 r2(seed + 19);
        PolyD p{{1, 0}};
        for (int k = 0; k < 3; ++k) {
            CD root(re(r2), im(r2));
            PolyD next(p.size() + 1, CD(0, 0));
            for (size_t j = 0; j < p.size(); ++j) {
                next[j + 1] += p[j];
                next[j] -= root * p[j];
            }
            p = next;
        }
        SamplingReport rep = sampling_bounds_check_l1({{1, 0}}, p, 0.3, 1.0);
        c.expect(rep.upper_ok && rep.lower_ok, "L1 sampling inequality");
    }
    return {9, "one-variable quadrature, interlacing, sampling bounds", c.ok,
            c.detail.str()};
}

CriterionResult criterion_10(unsigned seed, bool quick) {
    Check c;
    std::mt19937 rng(seed + 10);
    int instances = quick ? 10 : 100;
    int inconclusive = 0, mismatches = 0, run = 0;
    std::uniform_real_distribution<double> off(0.2, 0.6);
    std::uniform_int_distribution<int> side(0, 1), big(2, 6);
    numverify::IntegrateOptions opt;
    opt.margin = 0.05;
    opt.k_max = 19;
    opt.cell_budget = 150000;
    while (run < instances) {
        LocalModel m = random_model(rng, 2, 2, true);
        BiPoly q = random_numerator(rng);
        ExponentRange er = lp_threshold(q, m);
        double p_star = er.p_star ? er.p_star->get_d() : -1.0;
        double pe;
        if (!er.p_star) {
            pe = 1.0 + off(rng) * big(rng);
        } else if (side(rng) == 0 && p_star - off(rng) >= 1.0) {
            pe = p_star - off(rng);
        } else {
            pe = p_star + off(rng);
        }
        Rat p_rat = parse_rat(std::to_string(pe)).value();
        bool symbolic = is_in_Lp(q, m, p_rat).verdict;
        ++run;
        Verdict v = numverify::oracle_membership(q, m, pe,
                                                 er.p_star ? std::make_optional(p_star)
                                                           : std::nullopt,
                                                 0.05, opt);
        if (v == Verdict::Inconclusive) {
            ++inconclusive;
            continue;
        }
        bool numeric_member = v == Verdict::Converges;
        if (numeric_member != symbolic) {
            ++mismatches;
            c.expect(false, "oracle mismatch: p=" + std::to_string(pe) +
                                " p*=" + std::to_string(p_star) + " model M=" +
                                std::to_string(m.size()) + " Q=" + q.str());
            break;
        }
    }
    c.expect(mismatches == 0, "conclusive oracle runs must match the symbolic verdict");
    c.expect(inconclusive * 10 < run,
             "inconclusive rate " + std::to_string(inconclusive) + "/" + std::to_string(run));
    std::ostringstream extra;
    extra << "ran " << run << ", inconclusive " << inconclusive;
    if (!c.ok) extra << "; " << c.detail.str();
    return {10, "numerical oracle concordance", c.ok, extra.str()};
}

CriterionResult criterion_11() {
    Check c;
    numverify::IntegrateOptions opt;
    opt.margin = 0.05;
    opt.k_max = 20;
    opt.cell_budget = 200000;
    {
        numverify::DerivativeProbe probe = numverify::derivative_probe(model_1x(), 0.1, opt);
        c.expect(std::abs(probe.expected - 1.5) < 1e-12, "expected threshold 3/2");
        c.expect(probe.ok, "flip around 3/2 for {(1,x)}");
    }
    {
        numverify::DerivativeProbe probe =
            numverify::derivative_probe(model_two_zero(), 0.1, opt);
        c.expect(std::abs(probe.expected - 1.25) < 1e-12, "expected threshold 5/4");
        c.expect(probe.ok, "flip around 5/4 for {(1,0),(2,0)}");
    }
    return {11, "derivative integrability threshold probes", c.ok, c.detail.str()};
}

} // namespace

std::vector<CriterionResult> run_all(const Options& opt) {
    std::vector<CriterionResult> out;
    auto guard = [&](int id, const std::string& name,
                     const std::function<CriterionResult()>& f) {
        try {
            out.push_back(f());
        } catch (const std::exception& e) {
            out.push_back({id, name, false, std::string("exception: ") + e.what()});
        }
    };
    guard(1, "example 1.1 thresholds and first-order condition", criterion_1);
    guard(2, "order-on-datum golden values", criterion_2);
    guard(3, "pexample dimensions and infinity basis", criterion_3);
    guard(4, "L^2 dimension identity on 200 random models",
          [&] { return criterion_4(opt.seed); });
    guard(5, "easy2branch basis and L^2 conditions", criterion_5);
    guard(6, "exex proper-t rejection/certification with exact tails", criterion_6);
    guard(7, "branch-order verification (Bvanish)", criterion_7);
    guard(8, "three-way equivalence suite", [&] { return criterion_8(opt.seed, opt.quick); });
    guard(9, "one-variable quadrature, interlacing, sampling bounds",
          [&] { return criterion_9(opt.seed); });
    guard(10, "numerical oracle concordance", [&] { return criterion_10(opt.seed, opt.quick); });
    guard(11, "derivative integrability threshold probes", criterion_11);
    return out;
}

int report(std::ostream& os, const std::vector<CriterionResult>& results) {
    int failures = 0;
    for (const auto& r : results) {
        os << (r.pass ? "PASS" : "FAIL") << "  criterion " << r.id << ": " << r.name;
        if (!r.detail.empty()) os << "  [" << r.detail << "]";
        os << "\n";
        if (!r.pass) ++failures;
    }
    return failures;
}

} // namespace stablefrac::acceptance
