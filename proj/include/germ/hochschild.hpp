#pragma once

#include <optional>
#include <vector>

#include "germ/ainfty.hpp"

namespace germ {

// Hochschild cochain truncated at arity L: a finite family of multilinear
// components of a fixed total degree. The arity-i component has internal
// parity total_parity + i (mod 2).
//
// `window` is the guaranteed arity range: operations that would produce
// components above it drop them and set `discarded`, and identities are only
// asserted where no discard happened.
struct Cochain {
    SuperSpacePtr space;
    int total_parity = 0;
    int window = 0;
    bool discarded = false;
    MapFamily comps;

    const SuperMap* comp(int i) const {
        auto it = comps.find(i);
        return it == comps.end() ? nullptr : &it->second;
    }
    int max_arity() const { return family_max_arity(comps); }
    bool is_zero() const {
        for (const auto& [i, f] : comps)
            if (!f.is_zero()) return false;
        return true;
    }

    void add_component(SuperMap f) {
        if (f.is_zero()) return;
        if ((f.internal_parity() & 1) != ((total_parity + f.arity()) & 1))
            throw SchemaError("cochain component of arity " + std::to_string(f.arity()) +
                              " violates the parity bookkeeping");
        if (f.arity() > window) {
            discarded = true;
            return;
        }
        auto [it, inserted] = comps.emplace(f.arity(), f);
        if (!inserted) it->second += f;
        if (it->second.is_zero()) comps.erase(it);
    }

    Cochain& operator+=(const Cochain& o) {
        if ((total_parity & 1) != (o.total_parity & 1))
            throw PreconditionError("adding cochains of different parity");
        window = std::min(window, o.window);
        discarded = discarded || o.discarded;
        for (const auto& [i, f] : o.comps) add_component(f);
        return *this;
    }
    Cochain& operator*=(const Rational& c) {
        for (auto& [i, f] : comps) f *= c;
        if (c.is_zero()) comps.clear();
        return *this;
    }
    friend Cochain operator+(Cochain a, const Cochain& b) { return a += b; }
    friend Cochain operator*(Cochain a, const Rational& c) { return a *= c; }

    friend bool operator==(const Cochain& a, const Cochain& b) {
        if ((a.total_parity & 1) != (b.total_parity & 1)) return false;
        auto clean = [](const Cochain& c) {
            MapFamily m;
            for (const auto& [i, f] : c.comps)
                if (!f.is_zero()) m.emplace(i, f);
            return m;
        };
        return clean(a) == clean(b);
    }
};

inline Cochain zero_cochain(SuperSpacePtr sp, int parity, int window) {
    Cochain c;
    c.space = std::move(sp);
    c.total_parity = parity & 1;
    c.window = window;
    return c;
}

// Composition at the i-th place of single components (the braces operation).
inline SuperMap brace_at(const SuperMap& f, const SuperMap& g, int slot) {
    return compose_at(f, g, slot);
}

// f o g summed over arities, window-tracked.
inline Cochain circ(const Cochain& f, const Cochain& g) {
    Cochain r = zero_cochain(f.space, f.total_parity + g.total_parity + 1,
                             std::min(f.window, g.window));
    r.discarded = f.discarded || g.discarded;
    for (const auto& [k, fk] : f.comps) {
        if (fk.is_zero() || k == 0) continue;
        for (const auto& [l, gl] : g.comps) {
            if (gl.is_zero()) continue;
            if (k + l - 1 > r.window) {
                r.discarded = true;
                continue;
            }
            r.add_component(circ(fk, gl));
        }
    }
    return r;
}

// Gerstenhaber bracket {f,g} = f o g - (-1)^{(|f|-1)(|g|-1)} g o f.
inline Cochain gerstenhaber(const Cochain& f, const Cochain& g) {
    Cochain r = circ(f, g);
    Cochain s = circ(g, f);
    int sf = (f.total_parity + 1) & 1, sg = (g.total_parity + 1) & 1;
    if (sf && sg)
        r += s;
    else
        r += s * Rational(-1);
    return r;
}

// Product family of an algebra as a degree-2 cochain (all components have
// shifted parity 1, i.e. total parity 0).
inline Cochain structure_cochain(const AInftyAlgebra& A, int window,
                                 const MapFamily* twist = nullptr) {
    Cochain m = zero_cochain(A.space, 0, window);
    for (const auto& [k, mk] : A.products) m.add_component(mk);
    if (twist)
        for (const auto& [k, mk] : *twist) m.add_component(mk);
    return m;
}

// Cup product with respect to the algebra's m_2:
// (f cup g) = m_2 plugged with f and g side by side, shifted-Koszul signs.
inline Cochain cup(const Cochain& f, const Cochain& g, const AInftyAlgebra& A) {
    Cochain r = zero_cochain(f.space, f.total_parity + g.total_parity,
                             std::min(f.window, g.window));
    r.discarded = f.discarded || g.discarded;
    const SuperMap* m2 = A.product(2);
    if (!m2) return r;
    const SuperSpace& sp = *A.space;
    int sg = (g.total_parity + 1) & 1;
    for (const auto& [k, fk] : f.comps) {
        for (const auto& [l, gl] : g.comps) {
            if (fk.is_zero() || gl.is_zero()) continue;
            if (k + l > r.window) {
                r.discarded = true;
                continue;
            }
            SuperMap out(f.space, f.space, k + l,
                         (fk.internal_parity() + gl.internal_parity()) & 1);
            for (const auto& [u, fo] : fk.entries()) {
                int pass = 0;
                if (sg)
                    for (int j : u) pass ^= sp.parity(j) ^ 1;
                int base = sign_detail::dec_sign(sp, u) ^ pass;
                for (const auto& [v, go] : gl.entries()) {
                    BasisTuple w;
                    w.reserve(k + l);
                    w.insert(w.end(), u.begin(), u.end());
                    w.insert(w.end(), v.begin(), v.end());
                    int e0 = base ^ sign_detail::dec_sign(sp, v) ^
                             sign_detail::dec_sign(sp, w);
                    for (const auto& [of, cf] : fo)
                        for (const auto& [og, cg] : go) {
                            BasisTuple prod{static_cast<int>(of), static_cast<int>(og)};
                            SparseVec heads = m2->apply(prod);
                            if (heads.empty()) continue;
                            int e = e0 ^ sign_detail::dec_sign(sp, prod);
                            Rational c = cf * cg * (e ? Rational(-1) : Rational(1));
                            for (const auto& [o, cm] : heads)
                                out.add_entry(w, static_cast<int>(o), c * cm);
                        }
                }
            }
            r.add_component(std::move(out));
        }
    }
    return r;
}

// Arity-truncated Hochschild complex of an A-infinity algebra, optionally
// twisted by a Maurer-Cartan family. The differential is
// (-1)^{|f|-1} {m (+ m'), f}.
struct TruncatedComplex {
    AInftyAlgebra algebra;
    int window = 6;
    std::optional<MapFamily> twist;

    Cochain structure() const {
        return structure_cochain(algebra, window, twist ? &*twist : nullptr);
    }
    int k_max() const {
        int k = algebra.k_max();
        if (twist) k = std::max(k, family_max_arity(*twist));
        return k;
    }
};

inline Cochain differential(const Cochain& f, const TruncatedComplex& cx) {
    Cochain br = gerstenhaber(cx.structure(), f);
    if (f.total_parity & 1) return br;  // (-1)^{|f|-1} = +1 for odd |f|
    return br * Rational(-1);
}

// Explicit three-term differential for a single-product (associative)
// algebra, evaluated tuple by tuple from the formula rather than through the
// brace engine. Used as the independent agreement path.
inline Cochain differential_explicit_m2(const Cochain& f, const TruncatedComplex& cx) {
    const SuperMap* m2 = cx.algebra.product(2);
    if (!m2 || cx.algebra.products.size() != 1 || cx.twist)
        throw PreconditionError("explicit differential needs a pure m_2 algebra");
    const SuperSpace& sp = *cx.algebra.space;
    Cochain out = zero_cochain(f.space, f.total_parity + 1, f.window);
    out.discarded = f.discarded;
    int sf = (f.total_parity + 1) & 1;
    auto b2 = [&](int a, int b) {
        SparseVec v = m2->apply({a, b});
        if (sp.parity(a)) {  // dec sign of the pair
            for (auto& [o, c] : v) c = -c;
        }
        return v;
    };
    for (const auto& [n, fn] : f.comps) {
        if (fn.is_zero()) continue;
        if (n + 1 > f.window) {
            out.discarded = true;
            continue;
        }
        SuperMap dfn(f.space, f.space, n + 1, fn.internal_parity());
        detail::enumerate_tuples(sp.dim(), n + 1, [&](const BasisTuple& t) {
            SparseVec acc;  // shifted-world value
            auto accumulate = [&](const SparseVec& v, int sign) {
                for (const auto& [o, c] : v) {
                    Rational cc = sign ? -c : c;
                    auto [it, ins] = acc.emplace(o, cc);
                    if (!ins) {
                        it->second += cc;
                        if (it->second.is_zero()) acc.erase(it);
                    }
                }
            };
            // F applied in the shifted world to a basis tuple
            auto F = [&](const BasisTuple& u) {
                SparseVec v = fn.apply(u);
                if (!v.empty() && sign_detail::dec_sign(sp, u))
                    for (auto& [o, c] : v) c = -c;
                return v;
            };
            // term 1: B(F(x_1..x_n), x_{n+1})
            {
                BasisTuple u(t.begin(), t.end() - 1);
                for (const auto& [o, c] : F(u)) {
                    SparseVec h = b2(static_cast<int>(o), t.back());
                    for (auto& [o2, c2] : h) c2 *= c;
                    accumulate(h, 0);
                }
            }
            // term 2: (-1)^{F^ * x_1^} B(x_1, F(x_2..x_{n+1}))
            {
                BasisTuple u(t.begin() + 1, t.end());
                int sgn = sf & (sp.parity(t[0]) ^ 1);
                for (const auto& [o, c] : F(u)) {
                    SparseVec h = b2(t[0], static_cast<int>(o));
                    for (auto& [o2, c2] : h) c2 *= c;
                    accumulate(h, sgn);
                }
            }
            // term 3: -(-1)^{F^} sum_i (-1)^{x_1^+..+x_{i-1}^} F(..,B(x_i,x_{i+1}),..)
            {
                int pass = 0;
                for (int i = 0; i < n; ++i) {
                    if (i > 0) pass ^= sp.parity(t[i - 1]) ^ 1;
                    SparseVec mid = b2(t[i], t[i + 1]);
                    for (const auto& [o, c] : mid) {
                        BasisTuple u;
                        u.insert(u.end(), t.begin(), t.begin() + i);
                        u.push_back(static_cast<int>(o));
                        u.insert(u.end(), t.begin() + i + 2, t.end());
                        SparseVec v = F(u);
                        for (auto& [o2, c2] : v) c2 *= c;
                        accumulate(v, 1 ^ sf ^ pass);
                    }
                }
            }
            // overall prefactor (-1)^{|f|-1} and the unshift of the output
            int e = sf ^ sign_detail::dec_sign(sp, t);
            for (const auto& [o, c] : acc)
                dfn.add_entry(t, static_cast<int>(o), e ? -c : c);
        });
        out.add_component(std::move(dfn));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Truncated cohomology

// Coordinates of the (normalized) cochain space of one total parity:
// all (arity, input tuple, output) with the right component parity, tuples
// restricted to non-unit inputs when normalization applies.
class CochainCoords {
public:
    CochainCoords(const SuperSpacePtr& sp, int total_parity, int window,
                  std::optional<int> skip_unit)
        : space_(sp), parity_(total_parity & 1), window_(window), skip_(skip_unit) {
        const SuperSpace& s = *sp;
        for (int arity = 0; arity <= window; ++arity) {
            int comp_parity = (parity_ + arity) & 1;
            detail::enumerate_tuples(s.dim(), arity, [&](const BasisTuple& t) {
                if (skip_)
                    for (int i : t)
                        if (i == *skip_) return;
                int p = comp_parity;
                for (int i : t) p ^= s.parity(i);
                for (std::size_t o = 0; o < s.dim(); ++o)
                    if (s.parity(o) == p) keys_.push_back(make_key(arity, t, static_cast<int>(o)));
            });
        }
        for (std::size_t i = 0; i < keys_.size(); ++i) index_.emplace(keys_[i], i);
    }

    std::size_t dim() const { return keys_.size(); }

    SparseVec to_vec(const Cochain& c) const {
        SparseVec v;
        for (const auto& [arity, f] : c.comps)
            for (const auto& [t, outs] : f.entries())
                for (const auto& [o, val] : outs) {
                    auto it = index_.find(make_key(arity, t, static_cast<int>(o)));
                    if (it == index_.end())
                        throw PreconditionError("cochain has support outside the coordinate set");
                    v.emplace(static_cast<std::int64_t>(it->second), val);
                }
        return v;
    }

    Cochain to_cochain(const SparseVec& v) const {
        Cochain c = zero_cochain(space_, parity_, window_);
        std::map<int, SuperMap> comps;
        for (const auto& [i, val] : v) {
            const auto& key = keys_[static_cast<std::size_t>(i)];
            int arity = key[0];
            BasisTuple t(key.begin() + 1, key.end() - 1);
            auto it = comps.find(arity);
            if (it == comps.end())
                it = comps.emplace(arity, SuperMap(space_, space_, arity, (parity_ + arity) & 1))
                         .first;
            it->second.add_entry(t, key.back(), val);
        }
        for (auto& [a, f] : comps) c.add_component(std::move(f));
        return c;
    }

    // unit cochain basis element for coordinate i
    Cochain basis_cochain(std::size_t i) const {
        SparseVec v{{static_cast<std::int64_t>(i), Rational(1)}};
        return to_cochain(v);
    }

private:
    static std::vector<int> make_key(int arity, const BasisTuple& t, int o) {
        std::vector<int> k;
        k.reserve(t.size() + 2);
        k.push_back(arity);
        k.insert(k.end(), t.begin(), t.end());
        k.push_back(o);
        return k;
    }

    SuperSpacePtr space_;
    int parity_, window_;
    std::optional<int> skip_;
    std::vector<std::vector<int>> keys_;
    std::map<std::vector<int>, std::size_t> index_;
};

struct CohomologyResult {
    std::size_t dimension = 0;      // classes surviving the window restriction
    std::size_t raw_dimension = 0;  // plain truncated kernel/image count at L
    std::vector<Cochain> representatives;
    bool stable = false;       // restricted dimensions agreed at L and L-1
    std::size_t dim_prev = 0;  // restricted dimension at window L-1
    int window = 0;
};

namespace detail {

inline std::optional<int> normalization_unit(const TruncatedComplex& cx) {
    if (!cx.algebra.unit) return std::nullopt;
    if (cx.twist) {
        for (const auto& [k, f] : *cx.twist)
            for (const auto& [t, outs] : f.entries())
                for (int i : t)
                    if (i == *cx.algebra.unit) return std::nullopt;
    }
    return cx.algebra.unit;
}

// Kernel and image data of the truncated differential in one parity.
struct WindowHomology {
    CochainCoords coords;
    std::vector<SparseVec> kernel;  // kernel basis of d at this window
    SparseElim image;               // image of d from the other parity
    std::size_t raw_dim = 0;

    WindowHomology(const TruncatedComplex& cx, int parity, int window)
        : coords(cx.algebra.space, parity, window, normalization_unit(cx)), image(false) {
        std::optional<int> unit = normalization_unit(cx);
        CochainCoords other(cx.algebra.space, parity ^ 1, window, unit);
        TruncatedComplex cw = cx;
        cw.window = window;
        std::vector<SparseVec> cols;
        cols.reserve(coords.dim());
        for (std::size_t i = 0; i < coords.dim(); ++i)
            cols.push_back(other.to_vec(differential(coords.basis_cochain(i), cw)));
        RankKernel rk = rank_kernel(cols);
        kernel = std::move(rk.kernel);
        for (std::size_t i = 0; i < other.dim(); ++i)
            image.insert(coords.to_vec(differential(other.basis_cochain(i), cw)));
        SparseElim q = image;
        for (const auto& z : kernel)
            if (q.insert(z)) ++raw_dim;
    }
};

// Rank of the map H(window) -> H(window-1) induced by dropping the top
// arity. Classes that only exist because the truncation cut their
// differential die under this restriction, so the rank is the honest count.
// Representatives of the surviving classes are collected from `big`.
inline std::size_t restricted_rank(const WindowHomology& big, const WindowHomology& small,
                                   std::vector<SparseVec>* reps) {
    SparseElim elim = small.image;
    std::size_t rank = 0;
    for (const auto& z : big.kernel) {
        Cochain zc = big.coords.to_cochain(z);
        Cochain cut = zc;
        cut.window -= 1;
        cut.comps.erase(cut.window + 1);
        if (elim.insert(small.coords.to_vec(cut))) {
            ++rank;
            if (reps) reps->push_back(z);
        }
    }
    return rank;
}

}  // namespace detail

// Tries to express `target` exactly as the differential of a cochain
// supported in arities <= source_window. The returned witness is verified:
// its differential reproduces `target` on the nose (all arities, full
// complex). Infeasibility of the window system is returned as nullopt; a
// larger window may still succeed.
inline std::optional<Cochain> coboundary_witness(const Cochain& target,
                                                 const TruncatedComplex& cx,
                                                 int source_window) {
    int tgt_window = std::max(target.max_arity(), source_window + cx.k_max() - 1);
    CochainCoords src(cx.algebra.space, (target.total_parity + 1) & 1, source_window,
                      std::nullopt);
    CochainCoords tgt(cx.algebra.space, target.total_parity & 1, tgt_window, std::nullopt);
    TruncatedComplex cw = cx;
    cw.window = tgt_window;
    std::map<std::int64_t, SparseVec> columns;
    for (std::size_t i = 0; i < src.dim(); ++i) {
        Cochain e = src.basis_cochain(i);
        e.window = tgt_window;
        columns.emplace(static_cast<std::int64_t>(i), tgt.to_vec(differential(e, cw)));
    }
    LinearSolution sol = solve_columns(columns, tgt.to_vec(target));
    if (!sol.feasible) return std::nullopt;
    Cochain witness = src.to_cochain(sol.x);
    witness.window = tgt_window;
    Cochain check = differential(witness, cw);
    check += target * Rational(-1);
    if (!check.is_zero())
        throw InvariantError("coboundary witness failed post-verification");
    return witness;
}

// Truncated cohomology of the (possibly twisted) complex in one parity,
// with top-arity truncation artifacts filtered out by restriction to the
// next smaller window. `stable` means the filtered dimension agreed between
// windows L and L-1.
inline CohomologyResult cohomology(const TruncatedComplex& cx, int parity) {
    if (cx.window < 2) throw PreconditionError("cohomology needs an arity window >= 2");
    parity &= 1;
    CohomologyResult out;
    out.window = cx.window;
    detail::WindowHomology top(cx, parity, cx.window);
    detail::WindowHomology mid(cx, parity, cx.window - 1);
    detail::WindowHomology low(cx, parity, cx.window - 2);
    out.raw_dimension = top.raw_dim;
    std::vector<SparseVec> reps;
    out.dimension = detail::restricted_rank(top, mid, &reps);
    out.dim_prev = detail::restricted_rank(mid, low, nullptr);
    out.stable = (out.dimension == out.dim_prev);
    for (const auto& z : reps) out.representatives.push_back(top.coords.to_cochain(z));
    return out;
}

}  // namespace germ
