#include "stablefrac/jsonio.hpp"

#include <fstream>

namespace stablefrac {

Json model_to_json(const LocalModel& m) {
    Json out;
    out["branches"] = Json::array();
    for (const auto& b : m.branches) {
        Json jb;
        jb["L"] = b.L;
        Json q = Json::array();
        for (size_t k = 1; k < b.q.c.size(); ++k) q.push_back(rat_str(b.q.c[k]));
        jb["q"] = q;
        out["branches"].push_back(jb);
    }
    return out;
}

LocalModel model_from_json(const Json& j) {
    LocalModel m;
    if (!j.contains("branches") || !j["branches"].is_array())
        throw InputError("model JSON needs a \"branches\" array");
    for (const auto& jb : j["branches"]) {
        BranchDatumT<Rat> d;
        d.L = jb.at("L").get<int>();
        Poly1<Rat> q;
        q.c.push_back(Rat(0));
        if (jb.contains("q"))
            for (const auto& c : jb.at("q")) {
                std::optional<Rat> r;
                if (c.is_string()) r = parse_rat(c.get<std::string>());
                else if (c.is_number_integer()) r = Rat(c.get<long>());
                if (!r) throw InputError("bad rational in model q array");
                q.c.push_back(*r);
            }
        q.trim();
        d.q = q;
        m.branches.push_back(std::move(d));
    }
    validate_model(m);
    return m;
}

LocalModel model_from_string_or_file(const std::string& arg) {
    std::string text = arg;
    if (!arg.empty() && arg[0] != '{') {
        std::ifstream in(arg);
        if (!in) throw InputError("cannot open model file: " + arg);
        text.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
    }
    Json j = Json::parse(text, nullptr, false);
    if (j.is_discarded()) throw InputError("model argument is not valid JSON");
    return model_from_json(j);
}

Json membership_to_json(const MembershipReport& rep,
                        const std::optional<ExponentRange>& range) {
    Json out;
    out["p"] = rep.p ? rat_str(*rep.p) : "inf";
    out["verdict"] = rep.verdict;
    Json branches = Json::array();
    for (const auto& b : rep.branches) {
        Json jb;
        jb["j"] = b.j;
        if (b.actual) jb["actual"] = *b.actual;
        else jb["actual"] = "inf";
        jb["required"] = b.required;
        jb["ok"] = b.ok;
        branches.push_back(jb);
    }
    out["branches"] = branches;
    if (rep.vacuous) out["vacuous"] = true;
    if (rep.numeric) out["numeric_mode"] = true;
    if (range) {
        out["p_star"] = range->p_star ? rat_str(*range->p_star) : "inf";
        out["p_star_open"] = true;
        out["in_linfty"] = range->includes_infinity;
    }
    return out;
}

Json certificate_to_json(const ProperTCertificate& cert) {
    Json out;
    out["t"] = rat_str(cert.t);
    out["matched"] = cert.matched;
    out["contacts"] = cert.contacts;
    if (cert.numeric) out["numeric_mode"] = true;
    return out;
}

Json basis_to_json(const IntegrabilityBasis& ib) {
    Json out;
    out["p"] = ib.p ? rat_str(*ib.p) : "inf";
    out["t"] = rat_str(ib.qb.t);
    out["order"] = ib.order;
    Json per_k = Json::array();
    for (size_t pos = 0; pos < ib.order.size(); ++pos) {
        Json jk;
        jk["datum"] = ib.order[pos];
        jk["lower"] = ib.lower[pos];
        jk["m_k"] = ib.upper[pos];
        per_k.push_back(jk);
    }
    out["bounds"] = per_k;
    out["dimension"] = ib.count;
    if (ib.qb.numeric) out["numeric_mode"] = true;

    Json fks = Json::array();
    auto series_json = [](const auto& xs) {
        Json arr = Json::array();
        for (const auto& c : xs.c) {
            if constexpr (std::is_same_v<std::decay_t<decltype(c)>, GaussianRational>) {
                arr.push_back(gq_str(c));
            } else {
                arr.push_back(c.re.to_double());
            }
        }
        return arr;
    };
    if (!ib.qb.numeric) {
        for (const auto& f : ib.qb.exact.f) {
            Json jf = Json::array();
            for (const auto& yc : f.yc) jf.push_back(series_json(yc));
            fks.push_back(jf);
        }
    } else {
        for (const auto& f : ib.qb.ball.f) {
            Json jf = Json::array();
            for (const auto& yc : f.yc) jf.push_back(series_json(yc));
            fks.push_back(jf);
        }
    }
    out["F"] = fks;
    return out;
}

Json scaling_to_json(const numverify::ScalingReport& rep) {
    Json out;
    out["verdict"] = verdict_name(rep.verdict);
    out["slope"] = rep.slope;
    out["k_min"] = rep.k_min;
    out["annuli"] = rep.annuli;
    out["total"] = rep.total;
    out["cells"] = rep.cells;
    return out;
}

std::string verdict_name(numverify::Verdict v) {
    switch (v) {
        case numverify::Verdict::Converges: return "Converges";
        case numverify::Verdict::Diverges: return "Diverges";
        default: return "Inconclusive";
    }
}

} // namespace stablefrac
