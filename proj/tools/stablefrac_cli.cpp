#include <CLI11.hpp>

#include <iostream>

#include "stablefrac/acceptance.hpp"
#include "stablefrac/jsonio.hpp"
#include "stablefrac/onevar.hpp"
#include "stablefrac/parser.hpp"
#include "stablefrac/transfer.hpp"

namespace sf = stablefrac;

namespace {

std::vector<std::optional<sf::Rat>> parse_p_list(const std::string& arg) {
    std::vector<std::optional<sf::Rat>> out;
    std::string cur;
    auto flush = [&] {
        if (cur.empty()) return;
        if (cur == "inf" || cur == "oo" || cur == "infinity") {
            out.push_back(std::nullopt);
        } else {
            auto r = sf::parse_rat(cur);
            if (!r) throw sf::InputError("bad p value: " + cur);
            if (*r < 1) throw sf::InputError("p must be >= 1: " + cur);
            out.push_back(*r);
        }
        cur.clear();
    };
    for (char c : arg) {
        if (c == ',') flush();
        else if (!std::isspace(static_cast<unsigned char>(c))) cur += c;
    }
    flush();
    if (out.empty()) throw sf::InputError("empty p list");
    return out;
}

// Model from --model JSON, --P expression, or --disk expression.
struct ModelSource {
    std::string model_arg, p_expr, disk_expr;

    bool disk() const { return !disk_expr.empty(); }

    sf::Extraction resolve() const {
        int given = (!model_arg.empty()) + (!p_expr.empty()) + (!disk_expr.empty());
        if (given != 1)
            throw sf::InputError("give exactly one of --model, --P, --disk");
        if (!model_arg.empty()) {
            sf::Extraction ex;
            ex.model = sf::model_from_string_or_file(model_arg);
            ex.model_ball = sf::promote_model(ex.model);
            return ex;
        }
        sf::BiPoly p = disk() ? sf::torus_to_halfplane(sf::parse_disk(disk_expr)).half_plane
                              : sf::parse_halfplane(p_expr);
        return sf::extract_local_model(p);
    }
};

sf::onevar::PolyD parse_ypoly(const std::string& expr) {
    sf::BiPoly p = sf::parse_halfplane(expr);
    if (p.deg_x() > 0) throw sf::InputError("expected a polynomial in y only");
    sf::onevar::PolyD out(static_cast<size_t>(std::max(p.deg_y(), 0)) + 1, {0, 0});
    for (const auto& [k, c] : p.terms)
        out[static_cast<size_t>(k.second)] = {c.re.get_d(), c.im.get_d()};
    return out;
}

void emit(const sf::Json& j) { std::cout << j.dump(2) << "\n"; }

int run(int argc, char** argv) {
    CLI::App app{"local L^p integrability of rational functions with stable denominator"};
    app.require_subcommand(1);

    std::string model_arg, p_expr, disk_expr, q_expr, p_list_arg = "2", t_arg, p_poly_expr;
    unsigned seed = 0;
    bool quick = false;
    int trunc = 0;

    auto add_model_opts = [&](CLI::App* cmd) {
        cmd->add_option("--model", model_arg, "local model JSON (inline or a file path)");
        cmd->add_option("--P", p_expr, "denominator polynomial in x,y");
        cmd->add_option("--disk", disk_expr, "denominator polynomial in z,w (bidisk)");
    };

    auto* analyze = app.add_subcommand("analyze", "membership reports for a list of p");
    add_model_opts(analyze);
    analyze->add_option("--Q", q_expr, "numerator expression")->required();
    analyze->add_option("--p", p_list_arg, "comma-separated p values, e.g. 1,3/2,inf");

    auto* threshold = app.add_subcommand("threshold", "critical exponent p*");
    add_model_opts(threshold);
    threshold->add_option("--Q", q_expr, "numerator expression")->required();

    auto* dims = app.add_subcommand("dims", "dim I^p/(P, reflect P)");
    add_model_opts(dims);
    dims->add_option("--p", p_list_arg, "p value or inf");

    auto* basis = app.add_subcommand("basis", "integrability basis for one p");
    add_model_opts(basis);
    basis->add_option("--p", p_list_arg, "p value or inf");
    basis->add_option("--seed", seed, "seed for the proper-t search");
    basis->add_option("--trunc", trunc, "series truncation override");

    auto* proper = app.add_subcommand("proper-t", "find or check a proper t");
    add_model_opts(proper);
    proper->add_option("--t", t_arg, "check this t instead of searching");
    proper->add_option("--seed", seed, "seed for the search");
    proper->add_option("--trunc", trunc, "series truncation override");

    auto* verify = app.add_subcommand("verify-numeric", "dyadic-annulus integration oracle");
    add_model_opts(verify);
    verify->add_option("--Q", q_expr, "numerator expression")->required();
    verify->add_option("--p", p_list_arg, "real p value");

    auto* quad = app.add_subcommand("quadrature-check", "one-variable Parseval identity");
    quad->add_option("--p-poly", p_poly_expr, "stable polynomial in y")->required();
    quad->add_option("--Q", q_expr, "numerator polynomial in y")->required();
    quad->add_option("--t", t_arg, "pencil parameter t (default 0)");

    auto* transfer = app.add_subcommand("transfer", "Cayley transfer of a bidisk polynomial");
    transfer->add_option("--disk", disk_expr, "polynomial in z,w")->required();

    auto* selftest = app.add_subcommand("selftest", "run the acceptance suite");
    selftest->add_option("--seed", seed, "suite seed");
    selftest->add_flag("--quick", quick, "trim the sampled suites");

    CLI11_PARSE(app, argc, argv);
    ModelSource src{model_arg, p_expr, disk_expr};

    if (analyze->parsed()) {
        sf::Json out = sf::Json::array();
        if (src.disk()) {
            sf::BiPoly pd = sf::parse_disk(disk_expr);
            sf::BiPoly qd = sf::parse_disk(q_expr);
            for (const auto& p : parse_p_list(p_list_arg)) {
                sf::DiskAnalysis da = sf::analyze_disk(pd, qd, p ? *p : sf::Rat(1));
                sf::MembershipReport rep;
                std::optional<sf::ExponentRange> range;
                if (!da.extraction.numeric) {
                    rep = p ? sf::is_in_Lp(da.q_transfer.half_plane, da.extraction.model, *p)
                            : sf::linfty_report(da.q_transfer.half_plane, da.extraction.model);
                    range = sf::lp_threshold(da.q_transfer.half_plane, da.extraction.model);
                } else {
                    auto qb = sf::promote(da.q_transfer.half_plane);
                    rep = p ? sf::is_in_Lp(qb, da.extraction.model_ball, *p)
                            : sf::linfty_report(qb, da.extraction.model_ball);
                    range = sf::lp_threshold(qb, da.extraction.model_ball);
                }
                out.push_back(sf::membership_to_json(rep, range));
            }
        } else {
            sf::Extraction ex = src.resolve();
            sf::BiPoly q = sf::parse_halfplane(q_expr);
            for (const auto& p : parse_p_list(p_list_arg)) {
                sf::MembershipReport rep;
                std::optional<sf::ExponentRange> range;
                if (!ex.numeric) {
                    rep = p ? sf::is_in_Lp(q, ex.model, *p) : sf::linfty_report(q, ex.model);
                    range = sf::lp_threshold(q, ex.model);
                } else {
                    auto qb = sf::promote(q);
                    rep = p ? sf::is_in_Lp(qb, ex.model_ball, *p)
                            : sf::linfty_report(qb, ex.model_ball);
                    range = sf::lp_threshold(qb, ex.model_ball);
                }
                out.push_back(sf::membership_to_json(rep, range));
            }
        }
        emit(out);
        return 0;
    }

    if (threshold->parsed()) {
        sf::Extraction ex = src.resolve();
        sf::BiPoly q = src.disk()
                           ? sf::torus_to_halfplane(sf::parse_disk(q_expr)).half_plane
                           : sf::parse_halfplane(q_expr);
        sf::ExponentRange er =
            ex.numeric ? sf::lp_threshold(sf::promote(q), ex.model_ball)
                       : sf::lp_threshold(q, ex.model);
        sf::Json out;
        out["p_star"] = er.p_star ? sf::rat_str(*er.p_star) : "inf";
        out["open"] = true;
        out["in_linfty"] = er.includes_infinity;
        if (ex.numeric) out["numeric_mode"] = true;
        emit(out);
        return 0;
    }

    if (dims->parsed()) {
        sf::Extraction ex = src.resolve();
        auto ps = parse_p_list(p_list_arg);
        sf::Json out;
        if (ps.size() == 1) {
            int d = ex.numeric ? sf::dim_Ip_quotient(ex.model_ball, ps[0])
                               : sf::dim_Ip_quotient(ex.model, ps[0]);
            out["p"] = ps[0] ? sf::rat_str(*ps[0]) : "inf";
            out["dim"] = d;
        } else {
            out = sf::Json::array();
            for (const auto& p : ps) {
                sf::Json o;
                o["p"] = p ? sf::rat_str(*p) : "inf";
                o["dim"] = ex.numeric ? sf::dim_Ip_quotient(ex.model_ball, p)
                                      : sf::dim_Ip_quotient(ex.model, p);
                out.push_back(o);
            }
        }
        emit(out);
        return 0;
    }

    if (basis->parsed()) {
        sf::Extraction ex = src.resolve();
        if (ex.numeric)
            throw sf::NumericInconclusive("basis construction requires an exact model");
        auto ps = parse_p_list(p_list_arg);
        sf::IntegrabilityBasis ib = sf::integrability_basis(ex.model, ps[0], trunc, seed);
        emit(sf::basis_to_json(ib));
        return 0;
    }

    if (proper->parsed()) {
        sf::Extraction ex = src.resolve();
        if (ex.numeric)
            throw sf::NumericInconclusive("proper-t machinery requires an exact model");
        int tr = trunc > 0 ? trunc : sf::default_truncation(ex.model);
        sf::Json out;
        if (!t_arg.empty()) {
            auto t = sf::parse_rat(t_arg);
            if (!t) throw sf::InputError("bad t value: " + t_arg);
            sf::ProperCheck chk = sf::is_proper(ex.model, *t, tr);
            out["proper"] = chk.proper;
            if (chk.proper) out["certificate"] = sf::certificate_to_json(chk.cert);
            else out["reason"] = chk.reason;
        } else {
            sf::ProperTResult pt = sf::find_proper_t(ex.model, tr, seed);
            out["proper"] = true;
            out["certificate"] = sf::certificate_to_json(pt.cert);
        }
        emit(out);
        return 0;
    }

    if (verify->parsed()) {
        sf::Extraction ex = src.resolve();
        if (ex.numeric)
            throw sf::NumericInconclusive("numeric oracle requires an exact model");
        sf::BiPoly q = sf::parse_halfplane(q_expr);
        auto ps = parse_p_list(p_list_arg);
        if (!ps[0]) throw sf::InputError("verify-numeric needs a finite p");
        sf::numverify::ScalingReport rep = sf::numverify::integrate_local(
            q, sf::build_P_from_model(ex.model), ps[0]->get_d());
        emit(sf::scaling_to_json(rep));
        return rep.verdict == sf::numverify::Verdict::Inconclusive ? 2 : 0;
    }

    if (quad->parsed()) {
        double t = 0;
        if (!t_arg.empty()) {
            auto tr = sf::parse_rat(t_arg);
            if (!tr) throw sf::InputError("bad t value: " + t_arg);
            t = tr->get_d();
        }
        sf::onevar::ParsevalReport rep =
            sf::onevar::parseval_check(parse_ypoly(q_expr), parse_ypoly(p_poly_expr), t);
        sf::Json out;
        out["integral"] = rep.integral;
        out["quad_sum"] = rep.quad_sum;
        out["rel_err"] = rep.rel_err;
        out["pass"] = rep.pass;
        emit(out);
        return 0;
    }

    if (transfer->parsed()) {
        sf::TransferResult tr = sf::torus_to_halfplane(sf::parse_disk(disk_expr));
        sf::Json out;
        out["half_plane"] = tr.half_plane.str();
        out["deg_z"] = tr.deg_z;
        out["deg_w"] = tr.deg_w;
        out["vanishes_at_center"] = tr.vanishes_at_center;
        emit(out);
        return 0;
    }

    if (selftest->parsed()) {
        sf::acceptance::Options opt;
        opt.seed = seed;
        opt.quick = quick;
        auto results = sf::acceptance::run_all(opt);
        int failures = sf::acceptance::report(std::cout, results);
        return failures == 0 ? 0 : 1;
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const sf::Inconclusive& e) {
        std::cerr << "inconclusive: " << e.what() << "\n";
        return 2;
    } catch (const sf::InputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
