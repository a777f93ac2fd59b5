#ifndef STABLEFRAC_LOCALMODEL_HPP
#define STABLEFRAC_LOCALMODEL_HPP

#include <optional>
#include <vector>

#include "stablefrac/bipoly.hpp"
#include "stablefrac/poly1.hpp"

namespace stablefrac {

// One branch datum (L, q): the branch of P is y + q(x) + i b x^{2L} + ...
// with q real, q(0) = 0, deg q < 2L.  The imaginary leading size b is not
// part of the datum; membership formulas use (L, q) only.
template <class K>
struct BranchDatumT {
    int L = 1;
    Poly1<K> q;
};

template <class K>
struct LocalModelT {
    std::vector<BranchDatumT<K>> branches;

    int size() const { return static_cast<int>(branches.size()); }
    int max_2l() const {
        int k = 0;
        for (const auto& b : branches) k = std::max(k, 2 * b.L);
        return k;
    }
};

using LocalModel = LocalModelT<Rat>;
using LocalModelBall = LocalModelT<Ball>;

struct ContactMatrix {
    std::vector<std::vector<int>> o;

    int size() const { return static_cast<int>(o.size()); }
    int operator()(int i, int j) const { return o[static_cast<size_t>(i)][static_cast<size_t>(j)]; }
    int row_sum(int j) const {
        int s = 0;
        for (int i = 0; i < size(); ++i) s += (*this)(i, j);
        return s;
    }
    int offdiag_row_sum(int j) const { return row_sum(j) - (*this)(j, j); }
    int upper_sum() const {
        int s = 0;
        for (int i = 0; i < size(); ++i)
            for (int j = i + 1; j < size(); ++j) s += (*this)(i, j);
        return s;
    }
    int total() const {
        int s = 0;
        for (auto& row : o)
            for (int v : row) s += v;
        return s;
    }
};

template <class K>
void validate_model(const LocalModelT<K>& m) {
    if (m.branches.empty()) throw InputError("local model needs at least one branch");
    for (const auto& b : m.branches) {
        if (b.L < 1) throw InputError("branch datum needs L >= 1");
        if (!b.q.c.empty() && zero_status(b.q.c[0]) != ZeroStatus::Zero)
            throw InputError("branch datum requires q(0) = 0");
        if (b.q.degree() >= 2 * b.L)
            throw InputError("branch datum requires deg q < 2L");
    }
}

// P(x,y) = prod_j (y + q_j(x) + i x^{2L_j}); exact expanded product.
template <class K>
BiPolyT<K> build_P_from_model(const LocalModelT<K>& m) {
    using C = GComplex<K>;
    validate_model(m);
    BiPolyT<K> p = BiPolyT<K>::constant(1);
    for (const auto& b : m.branches) {
        BiPolyT<K> f = BiPolyT<K>::var_y();
        for (size_t k = 0; k < b.q.c.size(); ++k)
            f.add_term(static_cast<int>(k), 0, C(b.q.c[k]));
        f.add_term(2 * b.L, 0, C::i_unit());
        p = p * f;
    }
    return p;
}

// O_ij = min{Ord(q_j - q_i), 2L_j, 2L_i}; diagonal O_jj = 2L_j.
template <class K>
ContactMatrix contact_matrix(const LocalModelT<K>& m) {
    validate_model(m);
    int n = m.size();
    ContactMatrix cm;
    cm.o.assign(static_cast<size_t>(n), std::vector<int>(static_cast<size_t>(n), 0));
    for (int i = 0; i < n; ++i) {
        cm.o[static_cast<size_t>(i)][static_cast<size_t>(i)] = 2 * m.branches[static_cast<size_t>(i)].L;
        for (int j = i + 1; j < n; ++j) {
            int bound = std::min(2 * m.branches[static_cast<size_t>(i)].L,
                                 2 * m.branches[static_cast<size_t>(j)].L);
            Poly1<K> diff = m.branches[static_cast<size_t>(j)].q - m.branches[static_cast<size_t>(i)].q;
            auto ord = diff.order();
            int v = ord ? std::min(*ord, bound) : bound;
            if (v < 1) throw InputError("contact order below 1: datum missing q(0)=0");
            cm.o[static_cast<size_t>(i)][static_cast<size_t>(j)] = v;
            cm.o[static_cast<size_t>(j)][static_cast<size_t>(i)] = v;
        }
    }
    return cm;
}

// dim C{x,y}/(P, reflect P) = sum_{i,j} O_ij; always even.
template <class K>
int intersection_multiplicity(const LocalModelT<K>& m) {
    int t = contact_matrix(m).total();
    if (t % 2 != 0) throw Error("intersection multiplicity came out odd");
    return t;
}

struct Extraction {
    bool numeric = false;
    // some q'(0) <= 0: the input was at best RxH-stable, not H^2-stable
    bool weak_stability_warning = false;
    LocalModel model;           // meaningful when !numeric
    LocalModelBall model_ball;  // always populated
};

// Newton-Puiseux extraction of the local model of P at (0,0).
Extraction extract_local_model(const BiPoly& p);

inline LocalModelBall promote_model(const LocalModel& m) {
    LocalModelBall out;
    for (const auto& b : m.branches) {
        BranchDatumT<Ball> d;
        d.L = b.L;
        for (const auto& c : b.q.c) d.q.c.push_back(Ball(c));
        d.q.trim();
        out.branches.push_back(std::move(d));
    }
    return out;
}

struct StabilityWitness {
    bool stable = true;
    double x_re = 0, x_im = 0, y_re = 0, y_im = 0;
};

// Finite probe: for sample x on the real line and in the upper half plane,
// no root of y -> P(x,y) may lie (strictly) in the upper half plane.  A
// sanity check, not a certification.
StabilityWitness check_stability_sample(const BiPoly& p, int grid_refinement = 12);

} // namespace stablefrac

#endif
