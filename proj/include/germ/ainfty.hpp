#pragma once

#include <optional>
#include <vector>

#include "germ/supermap.hpp"

namespace germ {

// Family of products or cochain components indexed by arity.
using MapFamily = std::map<int, SuperMap>;

inline int family_max_arity(const MapFamily& fam) {
    int k = 0;
    for (const auto& [a, f] : fam)
        if (!f.is_zero()) k = std::max(k, a);
    return k;
}

// Finite-dimensional Z/2-graded A-infinity algebra: a graded space with a
// finite family {m_k}, each of internal parity k mod 2. An absent arity means
// the zero product. `unit` optionally names a strict unit.
struct AInftyAlgebra {
    SuperSpacePtr space;
    MapFamily products;
    std::optional<int> unit;

    int k_max() const { return family_max_arity(products); }
    const SuperMap* product(int k) const {
        auto it = products.find(k);
        return it == products.end() ? nullptr : &it->second;
    }

    void set_product(SuperMap m) {
        if ((m.internal_parity() & 1) != (m.arity() & 1))
            throw SchemaError("product of arity " + std::to_string(m.arity()) +
                              " must have internal parity " + std::to_string(m.arity() & 1));
        products.insert_or_assign(m.arity(), std::move(m));
    }

    // Strict unit axioms: m_2(1,a) = m_2(a,1) = a, and every other product
    // vanishes on tuples containing the unit.
    void validate_unit() const {
        if (!unit) return;
        int u = *unit;
        if (space->parity(u) != 0) throw SchemaError("unit must be even");
        const SuperMap* m2 = product(2);
        for (std::size_t a = 0; a < space->dim(); ++a) {
            SparseVec want{{static_cast<std::int64_t>(a), Rational(1)}};
            SparseVec left = m2 ? m2->apply({u, static_cast<int>(a)}) : SparseVec{};
            SparseVec right = m2 ? m2->apply({static_cast<int>(a), u}) : SparseVec{};
            if (left != want || right != want)
                throw SchemaError("declared unit is not a strict unit for m_2");
        }
        for (const auto& [k, mk] : products) {
            if (k == 2) continue;
            for (const auto& [in, out] : mk.entries())
                for (int b : in)
                    if (b == u)
                        throw SchemaError("product m_" + std::to_string(k) +
                                          " does not vanish on the unit");
        }
    }
};

struct RelationViolation {
    int arity = 0;
    BasisTuple tuple;
    SparseVec defect;  // value of the relation sum on the tuple
};

struct RelationReport {
    int checked_to = 0;
    std::optional<RelationViolation> first;
    bool ok() const { return !first.has_value(); }
};

namespace detail {

inline int dec_sign_of(const SuperSpace& sp, const BasisTuple& t) {
    return sign_detail::dec_sign(sp, t);
}

// Explicit evaluation of the arity-n structure relation on one basis tuple:
// the double sum over (r,s,t) of inserting m_s into m_{r+1+t}, with the
// shifted-Koszul signs spelled out term by term. Independent of the generic
// composition engine.
inline SparseVec relation_value(const MapFamily& fam, const SuperSpace& sp,
                                const BasisTuple& tuple) {
    int n = static_cast<int>(tuple.size());
    SparseVec acc;  // parity-shifted accumulator
    int pass = 0;   // sum of shifted parities of tuple[0..r)
    for (int r = 0; r < n; ++r) {
        if (r > 0) pass ^= sp.parity(tuple[r - 1]) ^ 1;
        for (int s = 1; s + r <= n; ++s) {
            int t = n - r - s;
            int u = r + 1 + t;
            auto is = fam.find(s);
            auto iu = fam.find(u);
            if (is == fam.end() || iu == fam.end()) continue;
            BasisTuple inner(tuple.begin() + r, tuple.begin() + r + s);
            SparseVec mid = is->second.apply(inner);
            if (mid.empty()) continue;
            int inner_sign = dec_sign_of(sp, inner) ^ pass;
            BasisTuple outer(static_cast<std::size_t>(u), 0);
            for (int j = 0; j < r; ++j) outer[j] = tuple[j];
            for (int j = 0; j < t; ++j) outer[r + 1 + j] = tuple[r + s + j];
            for (const auto& [o, c] : mid) {
                outer[r] = static_cast<int>(o);
                SparseVec top = iu->second.apply(outer);
                if (top.empty()) continue;
                int e = inner_sign ^ dec_sign_of(sp, outer);
                Rational f = (e ? -c : c);
                for (const auto& [o2, c2] : top) {
                    auto [it, inserted] = acc.emplace(o2, f * c2);
                    if (!inserted) {
                        it->second += f * c2;
                        if (it->second.is_zero()) acc.erase(it);
                    }
                }
            }
        }
    }
    // express the defect in the stored (unshifted) convention
    if (!acc.empty() && dec_sign_of(sp, tuple))
        for (auto& [o, c] : acc) c = -c;
    return acc;
}

inline void enumerate_tuples(std::size_t dim, int n, const std::function<void(const BasisTuple&)>& fn) {
    BasisTuple t(static_cast<std::size_t>(n), 0);
    for (;;) {
        fn(t);
        int pos = n - 1;
        while (pos >= 0 && t[pos] + 1 == static_cast<int>(dim)) t[pos--] = 0;
        if (pos < 0) break;
        ++t[pos];
    }
}

}  // namespace detail

// Structure-relation check by direct expansion, arity by arity up to n_max.
// Reports the first violating (arity, tuple) in lexicographic order.
inline RelationReport check_relations(const MapFamily& fam, const SuperSpace& sp, int n_max) {
    RelationReport rep;
    rep.checked_to = n_max;
    for (int n = 1; n <= n_max && !rep.first; ++n) {
        detail::enumerate_tuples(sp.dim(), n, [&](const BasisTuple& t) {
            if (rep.first) return;
            SparseVec v = detail::relation_value(fam, sp, t);
            if (!v.empty()) rep.first = RelationViolation{n, t, std::move(v)};
        });
    }
    return rep;
}

inline RelationReport check_ainfty(const AInftyAlgebra& A, int n_max) {
    A.validate_unit();
    return check_relations(A.products, *A.space, n_max);
}

// A Maurer-Cartan candidate: a perturbation with the same shape constraints
// as the product family.
struct MaurerCartanElement {
    MapFamily perturbation;
};

inline MapFamily merged_structure(const AInftyAlgebra& A, const MaurerCartanElement& mc) {
    MapFamily sum = A.products;
    for (const auto& [k, f] : mc.perturbation) {
        if ((f.internal_parity() & 1) != (k & 1))
            throw PreconditionError("perturbation of arity " + std::to_string(k) +
                                    " has the wrong parity");
        auto [it, inserted] = sum.emplace(k, f);
        if (!inserted) it->second += f;
    }
    return sum;
}

struct MCReport {
    RelationReport explicit_path;  // relation sums of the summed structure
    RelationReport bracket_path;   // half of {m+m', m+m'} via the brace engine
    bool paths_agree = false;
    bool ok() const { return explicit_path.ok() && bracket_path.ok() && paths_agree; }
};

// Checks {m+m', m+m'} = 0 two ways: by re-running the explicit relation
// checker on the summed structure, and by squaring it with the generic brace
// composition. The two evaluations must agree entrywise.
inline MCReport mc_check(const AInftyAlgebra& A, const MaurerCartanElement& mc, int n_max) {
    MapFamily sum = merged_structure(A, mc);
    const SuperSpace& sp = *A.space;
    MCReport rep;
    rep.explicit_path = check_relations(sum, sp, n_max);
    rep.bracket_path.checked_to = n_max;
    rep.paths_agree = true;

    // square of the structure through the engine, collected per output arity
    std::map<int, SuperMap> square;
    for (const auto& [k, f] : sum) {
        if (f.is_zero()) continue;
        for (const auto& [l, g] : sum) {
            if (g.is_zero()) continue;
            int n = k + l - 1;
            if (n < 1 || n > n_max) continue;
            SuperMap term = circ(f, g);
            auto [it, inserted] = square.emplace(n, term);
            if (!inserted) it->second += term;
        }
    }
    for (int n = 1; n <= n_max && !rep.bracket_path.first; ++n) {
        auto it = square.find(n);
        if (it == square.end() || it->second.is_zero()) continue;
        const auto& first_entry = *it->second.entries().begin();
        rep.bracket_path.first =
            RelationViolation{n, first_entry.first, first_entry.second};
    }

    // entrywise agreement of the two paths on every arity up to n_max
    for (int n = 1; n <= n_max && rep.paths_agree; ++n) {
        auto it = square.find(n);
        detail::enumerate_tuples(sp.dim(), n, [&](const BasisTuple& t) {
            if (!rep.paths_agree) return;
            SparseVec lhs = detail::relation_value(sum, sp, t);
            SparseVec rhs = (it == square.end()) ? SparseVec{} : it->second.apply(t);
            if (lhs != rhs) rep.paths_agree = false;
        });
    }
    return rep;
}

}  // namespace germ
