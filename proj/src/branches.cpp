#include "stablefrac/branches.hpp"

#include <algorithm>
#include <random>

#include "stablefrac/puiseux.hpp"

namespace stablefrac {

namespace {

// contact order of two branch series; nullopt = agree past truncation
template <class K>
std::optional<int> series_contact(const XSeries<K>& a, const XSeries<K>& b) {
    return (a - b).order();
}

// order of q_j + a_k: >= 2L_j means branch k carries datum j
template <class K>
bool matches_datum(const XSeries<K>& a, const BranchDatumT<K>& d) {
    XSeries<K> s = a + XSeries<K>::from_poly(d.q, a.trunc);
    auto o = s.order();
    return !o || *o >= 2 * d.L;
}

bool augment(int k, const std::vector<std::vector<char>>& adj, std::vector<int>& match_b,
             std::vector<int>& match_d, std::vector<char>& seen) {
    for (size_t j = 0; j < adj[static_cast<size_t>(k)].size(); ++j) {
        if (!adj[static_cast<size_t>(k)][j] || seen[j]) continue;
        seen[j] = 1;
        if (match_d[j] < 0 || augment(match_d[j], adj, match_b, match_d, seen)) {
            match_b[static_cast<size_t>(k)] = static_cast<int>(j);
            match_d[j] = k;
            return true;
        }
    }
    return false;
}

template <class K>
ProperCheck check_proper(const LocalModelT<K>& m, const std::vector<XSeries<K>>& a,
                         const Rat& t, bool numeric) {
    const int M = m.size();
    ProperCheck out;
    out.cert.t = t;
    out.cert.numeric = numeric;

    std::vector<std::vector<char>> adj(static_cast<size_t>(M),
                                       std::vector<char>(static_cast<size_t>(M), 0));
    for (int k = 0; k < M; ++k)
        for (int j = 0; j < M; ++j)
            adj[static_cast<size_t>(k)][static_cast<size_t>(j)] =
                matches_datum(a[static_cast<size_t>(k)], m.branches[static_cast<size_t>(j)]);

    std::vector<int> match_b(static_cast<size_t>(M), -1), match_d(static_cast<size_t>(M), -1);
    int matched = 0;
    for (int k = 0; k < M; ++k) {
        std::vector<char> seen(static_cast<size_t>(M), 0);
        if (augment(k, adj, match_b, match_d, seen)) ++matched;
    }
    if (matched != M) {
        out.reason = "no branch/datum matching: some datum has no matching branch";
        return out;
    }
    out.cert.matched = match_b;

    ContactMatrix cm = contact_matrix(m);
    out.cert.contacts.assign(static_cast<size_t>(M), std::vector<int>(static_cast<size_t>(M), 0));
    for (int i = 0; i < M; ++i) {
        out.cert.contacts[static_cast<size_t>(i)][static_cast<size_t>(i)] =
            2 * m.branches[static_cast<size_t>(match_b[static_cast<size_t>(i)])].L;
        for (int k = i + 1; k < M; ++k) {
            auto o = series_contact(a[static_cast<size_t>(i)], a[static_cast<size_t>(k)]);
            int expected = cm(match_b[static_cast<size_t>(i)], match_b[static_cast<size_t>(k)]);
            if (!o) {
                // identical past truncation but expected O_ij < trunc: violation
                out.reason = "branch pair agrees past truncation, contact exceeds O_ij";
                out.bad_i = i;
                out.bad_j = k;
                return out;
            }
            if (*o != expected) {
                out.reason = "pairwise contact " + std::to_string(*o) + " != O_ij " +
                             std::to_string(expected);
                out.bad_i = i;
                out.bad_j = k;
                return out;
            }
            out.cert.contacts[static_cast<size_t>(i)][static_cast<size_t>(k)] = *o;
            out.cert.contacts[static_cast<size_t>(k)][static_cast<size_t>(i)] = *o;
        }
    }
    out.proper = true;
    return out;
}

template <class K>
XSeries<K> real_series_of(const XSeries<GComplex<K>>& s) {
    XSeries<K> r(s.trunc);
    for (int k = 0; k < s.trunc; ++k) {
        if (zero_status(s.c[static_cast<size_t>(k)].im) != ZeroStatus::Zero)
            throw NotStable("A+tB branch has a non-real coefficient");
        r.c[static_cast<size_t>(k)] = s.c[static_cast<size_t>(k)].re;
    }
    return r;
}

template <class K>
BvanishReport bvanish_impl(const LocalModelT<K>& m, const BiPolyT<K>& big_b,
                           const BiPolyT<K>& dy, const std::vector<XSeries<K>>& a,
                           const ProperTCertificate& cert) {
    ContactMatrix cm = contact_matrix(m);
    BvanishReport rep;
    rep.ok = true;
    const int M = m.size();
    for (int k = 0; k < M; ++k) {
        int j = cert.matched[static_cast<size_t>(k)];
        int ob = compose_on_branch(big_b, a[static_cast<size_t>(k)]).order_strict();
        int od = compose_on_branch(dy, a[static_cast<size_t>(k)]).order_strict();
        rep.b_orders.push_back(ob);
        rep.dy_orders.push_back(od);
        rep.expected_b.push_back(cm.row_sum(j));
        rep.expected_dy.push_back(cm.offdiag_row_sum(j));
        if (ob != cm.row_sum(j) || od != cm.offdiag_row_sum(j)) rep.ok = false;
    }
    return rep;
}

template <class K>
bool branch_membership_impl(const BiPolyT<K>& Q, const LocalModelT<K>& m, const Rat& p,
                            const std::vector<XSeries<K>>& a,
                            const ProperTCertificate& cert) {
    ContactMatrix cm = contact_matrix(m);
    for (size_t k = 0; k < a.size(); ++k) {
        int j = cert.matched[k];
        int two_l = 2 * m.branches[static_cast<size_t>(j)].L;
        int required = cm.row_sum(j) - ceil_2lp(two_l + 1, p) + 1;
        auto ord = compose_on_branch(Q, a[k]).order();
        // identically-zero composition satisfies every lower bound
        if (ord && *ord < required) return false;
    }
    return true;
}

} // namespace

BranchSystem branch_series(const LocalModel& m, const Rat& t, int trunc) {
    validate_model(m);
    BiPoly p = build_P_from_model(m);
    auto [a, b] = real_imag_parts(p);
    BiPoly w = a + b * GaussianRational(t);
    ExpandOutcome out = expand_branches(w, trunc);
    if (out.count() == 0) throw Error("A+tB produced no branches");

    BranchSystem sys;
    sys.t = t;
    sys.trunc = trunc;
    sys.numeric = out.numeric;
    if (!out.numeric) {
        for (auto& br : out.exact)
            for (int c = 0; c < br.multiplicity; ++c)
                sys.exact.push_back(real_series_of<Rat>(br.tail));
    } else {
        for (auto& br : out.ball)
            for (int c = 0; c < br.multiplicity; ++c)
                sys.ball.push_back(real_series_of<Ball>(br.tail));
    }
    if (static_cast<int>(sys.count()) != m.size())
        throw Inconclusive("branch count does not match model size");
    return sys;
}

ProperCheck is_proper(const LocalModel& m, const BranchSystem& sys) {
    if (!sys.numeric) return check_proper(m, sys.exact, sys.t, false);
    return check_proper(promote_model(m), sys.ball, sys.t, true);
}

ProperCheck is_proper(const LocalModel& m, const Rat& t, int trunc) {
    return is_proper(m, branch_series(m, t, trunc));
}

BvanishReport verify_bvanish(const LocalModel& m, const BranchSystem& sys,
                             const ProperTCertificate& cert) {
    BiPoly p = build_P_from_model(m);
    auto [a, b] = real_imag_parts(p);
    GaussianRational t(cert.t);
    if (!sys.numeric) {
        BiPoly dy = (a + b * t).derivative_y();
        return bvanish_impl(m, b, dy, sys.exact, cert);
    }
    LocalModelBall mb = promote_model(m);
    BiPolyBall pb = build_P_from_model(mb);
    auto [ab, bb] = real_imag_parts(pb);
    BiPolyBall dyb = (ab + bb * promote(t)).derivative_y();
    return bvanish_impl(mb, bb, dyb, sys.ball, cert);
}

ProperTResult find_proper_t(const LocalModel& m, int trunc, unsigned seed,
                            int max_attempts) {
    std::vector<Rat> candidates;
    for (int k = 1; candidates.size() + 8 < static_cast<size_t>(max_attempts); ++k) {
        candidates.push_back(Rat(k));
        candidates.push_back(Rat(-k));
    }
    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> num(-19, 19), den(2, 13);
    while (candidates.size() < static_cast<size_t>(max_attempts))
        candidates.push_back(rat(num(rng), den(rng)));

    std::string last_reason = "no attempt";
    for (const auto& t : candidates) {
        try {
            BranchSystem sys = branch_series(m, t, trunc);
            ProperCheck chk = is_proper(m, sys);
            if (chk.proper) return {t, chk.cert, std::move(sys)};
            last_reason = chk.reason;
        } catch (const Inconclusive& e) {
            last_reason = e.what();
        }
    }
    throw SearchExhausted("no proper t found in " + std::to_string(max_attempts) +
                          " attempts; last: " + last_reason);
}

bool membership_via_branches(const BiPoly& Q, const LocalModel& m, const Rat& p,
                             const BranchSystem& sys, const ProperTCertificate& cert) {
    if (p < 1) throw InputError("membership test requires p >= 1");
    if (!sys.numeric) return branch_membership_impl(Q, m, p, sys.exact, cert);
    return branch_membership_impl(promote(Q), promote_model(m), p, sys.ball, cert);
}

} // namespace stablefrac
