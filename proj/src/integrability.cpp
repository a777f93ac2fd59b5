#include "stablefrac/integrability.hpp"

#include <vector>

namespace stablefrac {

namespace {

using GQ = GaussianRational;

// dense coefficient vector of a y-reduced polynomial mod x^T
std::vector<GQ> to_vector(const BiPoly& p, int t, int m) {
    std::vector<GQ> v(static_cast<size_t>(t) * static_cast<size_t>(m));
    for (const auto& [k, c] : p.terms) {
        if (k.first >= t) continue;
        if (k.second >= m) throw Error("vectorization: y-degree not reduced");
        v[static_cast<size_t>(k.first) * static_cast<size_t>(m) + static_cast<size_t>(k.second)] = c;
    }
    return v;
}

struct Span {
    // pivot index -> normalized row
    std::vector<std::pair<size_t, std::vector<GQ>>> rows;

    // reduces v in place; returns true if it vanished (was in the span)
    bool reduce(std::vector<GQ>& v) const {
        for (const auto& [piv, row] : rows) {
            if (zero_status(v[piv]) == ZeroStatus::Zero) continue;
            GQ f = v[piv];
            for (size_t k = 0; k < v.size(); ++k) v[k] -= f * row[k];
        }
        for (const auto& c : v)
            if (zero_status(c) != ZeroStatus::Zero) return false;
        return true;
    }

    void insert(std::vector<GQ> v) {
        for (const auto& [piv, row] : rows) {
            if (zero_status(v[piv]) == ZeroStatus::Zero) continue;
            GQ f = v[piv];
            for (size_t k = 0; k < v.size(); ++k) v[k] -= f * row[k];
        }
        size_t piv = v.size();
        for (size_t k = 0; k < v.size(); ++k)
            if (zero_status(v[k]) != ZeroStatus::Zero) { piv = k; break; }
        if (piv == v.size()) return;
        GQ inv = GQ(Rat(1)) / v[piv];
        for (auto& c : v) c = c * inv;
        rows.emplace_back(piv, std::move(v));
    }
};

} // namespace

bool product_ideal_membership(const BiPoly& Q, const LocalModel& m) {
    validate_model(m);
    if (Q.is_zero()) return true;
    const int M = m.size();
    if (M > 12) throw InputError("product ideal test limited to small models");
    int t_total = 0;
    for (const auto& b : m.branches) t_total += 2 * b.L;
    const int T = t_total;  // x^T lies in the product ideal

    // g = prod_j (y + q_j): monic in y, also a generator (S = all)
    std::vector<BiPoly> lin;
    for (const auto& b : m.branches) {
        BiPoly f = BiPoly::var_y();
        for (size_t k = 0; k < b.q.c.size(); ++k) f.add_term(static_cast<int>(k), 0, GQ(b.q.c[k]));
        lin.push_back(f);
    }
    BiPoly g_full = BiPoly::constant(1);
    for (const auto& f : lin) g_full = g_full * f;

    auto normalize = [&](const BiPoly& p) {
        BiPoly r = divide_y(p, g_full).second;
        BiPoly cut;
        for (const auto& [k, c] : r.terms)
            if (k.first < T) cut.add_term(k.first, k.second, c);
        return cut;
    };

    std::vector<GQ> target = to_vector(normalize(Q), T, M);
    {
        bool zero = true;
        for (const auto& c : target)
            if (zero_status(c) != ZeroStatus::Zero) { zero = false; break; }
        if (zero) return true;
    }

    Span span;
    for (unsigned mask = 1; mask + 1 < (1u << M); ++mask) {
        BiPoly gen = BiPoly::constant(1);
        int xpow = 0;
        for (int j = 0; j < M; ++j) {
            if (mask & (1u << j)) gen = gen * lin[static_cast<size_t>(j)];
            else xpow += 2 * m.branches[static_cast<size_t>(j)].L;
        }
        if (xpow >= T) continue;
        gen = gen * BiPoly::monomial(xpow, 0);
        for (int a = 0; a + xpow < T; ++a)
            for (int b = 0; b < M; ++b) {
                BiPoly v = gen * BiPoly::monomial(a, b);
                span.insert(to_vector(normalize(v), T, M));
            }
    }
    return span.reduce(target);
}

} // namespace stablefrac
