#pragma once

#include <bit>
#include <cstdint>
#include <optional>
#include <vector>

#include "germ/milnor.hpp"
#include "germ/poly_parser.hpp"

namespace germ {

// Element of Sym(V*) (x) Lambda(V) at a jet order: for each wedge subset of
// {1..n} (bitmask) a polynomial coefficient. The wedge factors are kept in
// ascending index order.
class Polyvector {
public:
    Polyvector() : nvars_(0), order_(kUnboundedOrder) {}
    Polyvector(std::size_t nvars, int order) : nvars_(nvars), order_(order) {}

    std::size_t nvars() const { return nvars_; }
    int order() const { return order_; }
    const std::map<std::uint32_t, JetPolynomial>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add(std::uint32_t mask, const JetPolynomial& p) {
        JetPolynomial q = p.truncated(std::min(order_, p.order()));
        if (q.is_zero()) return;
        auto [it, inserted] = terms_.emplace(mask, q);
        if (!inserted) {
            it->second += q;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    const JetPolynomial* coeff(std::uint32_t mask) const {
        auto it = terms_.find(mask);
        return it == terms_.end() ? nullptr : &it->second;
    }

    int max_wedge_degree() const {
        int d = 0;
        for (const auto& [m, p] : terms_) d = std::max(d, std::popcount(m));
        return d;
    }

    Polyvector& operator+=(const Polyvector& o) {
        order_ = std::min(order_, o.order_);
        retruncate();
        for (const auto& [m, p] : o.terms_) add(m, p);
        return *this;
    }
    Polyvector& operator*=(const Rational& c) {
        if (c.is_zero()) {
            terms_.clear();
            return *this;
        }
        for (auto& [m, p] : terms_) p *= c;
        return *this;
    }
    friend Polyvector operator+(Polyvector a, const Polyvector& b) { return a += b; }
    friend Polyvector operator*(Polyvector a, const Rational& c) { return a *= c; }
    friend bool operator==(const Polyvector& a, const Polyvector& b) {
        return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
    }

private:
    void retruncate() {
        std::map<std::uint32_t, JetPolynomial> out;
        for (auto& [m, p] : terms_) {
            JetPolynomial q = p.truncated(order_);
            if (!q.is_zero()) out.emplace(m, std::move(q));
        }
        terms_ = std::move(out);
    }

    std::size_t nvars_;
    int order_;
    std::map<std::uint32_t, JetPolynomial> terms_;
};

namespace pv_detail {

// sign of sorting the concatenation (A ascending, B ascending) into one
// ascending wedge; 0 if the subsets overlap
inline int merge_sign(std::uint32_t a, std::uint32_t b, std::uint32_t* out) {
    if (a & b) return 0;
    *out = a | b;
    int inversions = 0;
    for (std::uint32_t bit = a; bit;) {
        std::uint32_t u = bit & (~bit + 1);  // lowest set bit of remaining a
        bit ^= u;
        inversions += std::popcount(b & (u - 1));  // b-elements smaller than u
    }
    return (inversions & 1) ? -1 : 1;
}

inline std::vector<int> mask_elements(std::uint32_t m) {
    std::vector<int> out;
    for (int i = 0; m; ++i, m >>= 1)
        if (m & 1) out.push_back(i);
    return out;
}

}  // namespace pv_detail

// Schouten bracket, by the displayed two-sum formula: derivative of one
// coefficient against a contracted wedge factor of the other, signs
// (-1)^{k-q} and (-1)^{l-p-1+(k-1)(l-1)}. Jet order drops by one (a
// derivative is taken in every term).
inline Polyvector schouten(const Polyvector& a, const Polyvector& b) {
    if (a.nvars() != b.nvars()) throw PreconditionError("variable count mismatch");
    // validity horizon: the first sum differentiates b, the second a; a sum
    // with no wedge factors on its side contributes nothing and costs no
    // order. Exact inputs (unbounded order) lose nothing.
    bool a_wedge = false, b_wedge = false;
    for (const auto& [m, p] : a.terms()) a_wedge = a_wedge || m != 0;
    for (const auto& [m, p] : b.terms()) b_wedge = b_wedge || m != 0;
    auto dec1 = [](int o) { return o == kUnboundedOrder ? o : o - 1; };
    int order = std::min(a.order(), b.order());
    if (a_wedge) order = std::min(order, std::min(a.order(), dec1(b.order())));
    if (b_wedge) order = std::min(order, std::min(b.order(), dec1(a.order())));
    Polyvector r(a.nvars(), order);
    for (const auto& [S, f] : a.terms()) {
        auto selems = pv_detail::mask_elements(S);
        int k = static_cast<int>(selems.size());
        for (const auto& [T, g] : b.terms()) {
            auto telems = pv_detail::mask_elements(T);
            int l = static_cast<int>(telems.size());
            // sum over wedge factors of a
            for (int q = 1; q <= k; ++q) {
                int var = selems[q - 1];
                JetPolynomial dg = g.derivative(var);
                if (dg.is_zero()) continue;
                std::uint32_t rest = S & ~(1u << var), full;
                int ms = pv_detail::merge_sign(rest, T, &full);
                if (!ms) continue;
                int sgn = ((k - q) & 1) ? -ms : ms;
                r.add(full, (f * dg) * Rational(sgn));
            }
            // sum over wedge factors of b
            for (int p = 1; p <= l; ++p) {
                int var = telems[p - 1];
                JetPolynomial df = f.derivative(var);
                if (df.is_zero()) continue;
                std::uint32_t rest = T & ~(1u << var), full;
                int ms = pv_detail::merge_sign(rest, S, &full);
                if (!ms) continue;
                int e = (l - p - 1 + (k - 1) * (l - 1)) & 1;
                int sgn = e ? -ms : ms;
                r.add(full, (g * df) * Rational(sgn));
            }
        }
    }
    return r;
}

// {W, theta}: the one-line contraction formula, evaluated directly; must
// agree with schouten(W as a Lambda^0 element, theta) entrywise.
inline Polyvector diff_W(const Polyvector& theta, const JetPolynomial& W) {
    if (!W.constant_term().is_zero())
        throw PreconditionError("potential must vanish at the origin");
    int worder = W.order() == kUnboundedOrder ? kUnboundedOrder : W.order() - 1;
    Polyvector r(theta.nvars(), std::min(theta.order(), worder));
    for (const auto& [T, g] : theta.terms()) {
        auto telems = pv_detail::mask_elements(T);
        for (int p = 1; p <= static_cast<int>(telems.size()); ++p) {
            int var = telems[p - 1];
            JetPolynomial dW = W.derivative(var);
            if (dW.is_zero()) continue;
            std::uint32_t rest = T & ~(1u << var);
            r.add(rest, (g * dW) * Rational((p & 1) ? -1 : 1));
        }
    }
    return r;
}

inline Polyvector from_polynomial(const JetPolynomial& p) {
    Polyvector r(p.nvars(), p.order());
    r.add(0, p);
    return r;
}

// ---------------------------------------------------------------------------
// Cohomology of (g, {W,-}): a Koszul-type complex on the wedge degree.

struct PvCohomology {
    // stable dimension and stability flag per wedge degree 0..n
    std::vector<std::size_t> dimensions;
    std::vector<bool> stable;
    // wedge-degree-0 part as a monomial basis (should match the Milnor basis)
    std::vector<Monomial> lambda0_basis;
    bool lambda0_matches_milnor = false;
    int order = 0;
};

namespace pv_detail {

// coordinates of the wedge-degree-l piece at jet order N
struct PieceCoords {
    MonomialIndexer ix;
    std::vector<std::uint32_t> masks;
    std::map<std::uint32_t, std::size_t> mask_pos;

    PieceCoords(std::size_t nvars, int N, int l) : ix(nvars, N) {
        for (std::uint32_t m = 0; m < (1u << nvars); ++m)
            if (std::popcount(m) == l) {
                mask_pos.emplace(m, masks.size());
                masks.push_back(m);
            }
    }
    std::int64_t index(std::uint32_t mask, const Monomial& mono) const {
        return static_cast<std::int64_t>(mask_pos.at(mask)) *
                   static_cast<std::int64_t>(ix.size()) +
               ix.index(mono);
    }
    SparseVec to_vec(const Polyvector& v, int N) const {
        SparseVec out;
        for (const auto& [mask, poly] : v.terms())
            for (const auto& [mono, c] : poly.terms())
                if (mono.degree() <= N) out.emplace(index(mask, mono), c);
        return out;
    }
};

// kernel, image and coordinates of the degree-l slot of the complex at order N
struct PieceHomology {
    PieceCoords coords;
    std::vector<SparseVec> kernel;  // of d_l at order N
    SparseElim image;               // of d_{l+1} at order N

    PieceHomology(const JetPolynomial& W, std::size_t nvars, int N, int l)
        : coords(nvars, N, l), image(false) {
        PieceCoords tgt(nvars, N, l == 0 ? 0 : l - 1);
        std::vector<SparseVec> cols;
        for (std::uint32_t mask : coords.masks) {
            for (std::size_t mi = 0; mi < coords.ix.size(); ++mi) {
                const Monomial& mono = coords.ix.monomial(static_cast<std::int64_t>(mi));
                if (mono.degree() > N) break;
                Polyvector e(nvars, N);
                e.add(mask, monomial_poly(mono, Rational(1), N));
                Polyvector de = diff_W(e, W);
                cols.push_back(l == 0 ? SparseVec{} : tgt.to_vec(de, N));
            }
        }
        RankKernel rk = rank_kernel(cols);
        kernel = std::move(rk.kernel);
        PieceCoords src(nvars, N, l + 1);
        if (l < static_cast<int>(nvars)) {
            for (std::uint32_t mask : src.masks) {
                for (std::size_t mi = 0; mi < src.ix.size(); ++mi) {
                    const Monomial& mono = src.ix.monomial(static_cast<std::int64_t>(mi));
                    if (mono.degree() > N) break;
                    Polyvector e(nvars, N);
                    e.add(mask, monomial_poly(mono, Rational(1), N));
                    image.insert(coords.to_vec(diff_W(e, W), N));
                }
            }
        }
    }

    // unpack a coordinate vector back into a polyvector
    Polyvector to_polyvector(const SparseVec& v, std::size_t nvars, int N) const {
        Polyvector out(nvars, N);
        for (const auto& [i, c] : v) {
            std::uint32_t mask = coords.masks[static_cast<std::size_t>(
                i / static_cast<std::int64_t>(coords.ix.size()))];
            const Monomial& mono = coords.ix.monomial(i % static_cast<std::int64_t>(coords.ix.size()));
            out.add(mask, monomial_poly(mono, c, N));
        }
        return out;
    }
};

// rank of H_l(order N) -> H_l(order N-1) induced by truncation
inline std::size_t stable_rank(const PieceHomology& big, const PieceHomology& small,
                               std::size_t nvars, int n_small) {
    SparseElim elim = small.image;
    std::size_t rank = 0;
    for (const auto& z : big.kernel) {
        Polyvector zp = big.to_polyvector(z, nvars, n_small + 1);
        Polyvector cut(nvars, n_small);
        for (const auto& [mask, poly] : zp.terms()) cut.add(mask, poly);
        if (elim.insert(small.coords.to_vec(cut, n_small))) ++rank;
    }
    return rank;
}

}  // namespace pv_detail

// Cohomology of the polyvector complex with differential {W,-}, computed at
// jet orders N and N+1 with the truncation map filtering edge artifacts, and
// probed once more at N+2 for the stability flags. For isolated W everything
// above wedge degree 0 dies and degree 0 reproduces the Milnor algebra.
inline PvCohomology pv_cohomology(const JetPolynomial& W, std::optional<int> order = {}) {
    detail::require_critical_at_origin(W);
    std::size_t n = W.nvars();
    int N = order.value_or(2 * std::max(W.total_degree(), 1));
    // the potential enters as an exact polynomial; lift its horizon so
    // multiplying against it costs no jet order
    JetPolynomial Wx = W.with_order(kUnboundedOrder);
    PvCohomology out;
    out.order = N;
    out.dimensions.assign(n + 1, 0);
    out.stable.assign(n + 1, false);
    for (int l = 0; l <= static_cast<int>(n); ++l) {
        pv_detail::PieceHomology h2(Wx, n, N + 2, l);
        pv_detail::PieceHomology h1(Wx, n, N + 1, l);
        pv_detail::PieceHomology h0(Wx, n, N, l);
        std::size_t d = pv_detail::stable_rank(h1, h0, n, N);
        std::size_t d_probe = pv_detail::stable_rank(h2, h1, n, N + 1);
        out.dimensions[static_cast<std::size_t>(l)] = d;
        out.stable[static_cast<std::size_t>(l)] = (d == d_probe);
    }
    // wedge-degree-0 presentation through the polyvector route
    pv_detail::PieceCoords c0(n, N, 0);
    SparseElim elim(false);
    pv_detail::PieceCoords src(n, N, 1);
    for (std::uint32_t mask : src.masks)
        for (std::size_t mi = 0; mi < src.ix.size(); ++mi) {
            const Monomial& mono = src.ix.monomial(static_cast<std::int64_t>(mi));
            Polyvector e(n, N);
            e.add(mask, monomial_poly(mono, Rational(1), N));
            elim.insert(c0.to_vec(diff_W(e, Wx), N));
        }
    for (std::size_t mi = 0; mi < c0.ix.size(); ++mi) {
        const Monomial& mono = c0.ix.monomial(static_cast<std::int64_t>(mi));
        if (!elim.is_pivot(c0.index(0, mono))) out.lambda0_basis.push_back(mono);
    }
    return out;
}

// Residue class of W in its Milnor algebra; zero exactly when W is
// quasi-homogeneous.
inline JetPolynomial class_of_W(const JetPolynomial& W, JetOptions opts = {}) {
    QuotientPresentation m = milnor_algebra(W, opts);
    if (!m.stable())
        throw UnstableError("Milnor presentation did not stabilize; class of W undecided");
    return m.normal_form(W.with_order(m.order()));
}

// ---------------------------------------------------------------------------
// Volume-form comparison with the twisted de Rham complex.

// Differential forms with polynomial coefficients, indexed by dx-subsets.
using DeRhamForm = Polyvector;

inline DeRhamForm volume_form(std::size_t nvars, int order) {
    DeRhamForm v(nvars, order);
    v.add((1u << nvars) - 1, monomial_poly(Monomial(nvars), Rational(1), order));
    return v;
}

// Contraction of a polyvector into the volume form. Normalized so that
// 1 maps to +dx_1^...^dx_n; the wedge-degree twist makes the intertwining
// sign with dW below globally +1.
inline DeRhamForm to_de_rham(const Polyvector& theta) {
    std::size_t n = theta.nvars();
    std::uint32_t all = (1u << n) - 1;
    DeRhamForm out(n, theta.order());
    for (const auto& [S, f] : theta.terms()) {
        std::uint32_t comp = all & ~S;
        std::uint32_t merged;
        int ms = pv_detail::merge_sign(S, comp, &merged);
        int l = std::popcount(S);
        int twist = ((l * (l + 1) / 2) & 1) ? -1 : 1;
        out.add(comp, f * Rational(ms * twist));
    }
    return out;
}

// Left wedge with dW.
inline DeRhamForm wedge_dW(const DeRhamForm& omega, const JetPolynomial& W) {
    DeRhamForm out(omega.nvars(), std::min(omega.order(), W.order() - 1));
    for (const auto& [T, g] : omega.terms()) {
        for (std::size_t i = 0; i < omega.nvars(); ++i) {
            if (T & (1u << i)) continue;
            JetPolynomial dW = W.derivative(i);
            if (dW.is_zero()) continue;
            std::uint32_t merged;
            int ms = pv_detail::merge_sign(1u << i, T, &merged);
            out.add(merged, (g * dW) * Rational(ms));
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Text format: terms like "3/2 * x^2 ; xi1^xi3" joined by top-level +/-.

inline Polyvector parse_polyvector(std::string_view text,
                                   const std::vector<std::string>& vars) {
    const std::size_t n = vars.size();
    // split into top-level terms; composite polynomial coefficients must be
    // parenthesized, e.g. "(x + y) ; xi1 + 2 ; xi2"
    std::vector<std::pair<std::string, int>> chunks;  // text, sign
    {
        std::string cur;
        int depth = 0, sign = 1;
        auto flush = [&]() {
            if (cur.find_first_not_of(" \t") != std::string::npos) {
                chunks.emplace_back(cur, sign);
            }
            cur.clear();
        };
        for (char c : text) {
            if (c == '(') ++depth;
            if (c == ')') --depth;
            if (depth == 0 && (c == '+' || c == '-')) {
                flush();
                sign = (c == '-') ? -1 : 1;
            } else {
                cur += c;
            }
        }
        flush();
    }
    int order = 0;
    std::vector<std::pair<std::uint32_t, JetPolynomial>> parsed;
    for (const auto& [chunk, s] : chunks) {
        auto semi = chunk.find(';');
        std::string poly_text = semi == std::string::npos ? chunk : chunk.substr(0, semi);
        std::string wedge_text = semi == std::string::npos ? "" : chunk.substr(semi + 1);
        JetPolynomial p = poly_text.find_first_not_of(" \t") == std::string::npos
                              ? parse_poly("1", vars)
                              : parse_poly(poly_text, vars);
        p *= Rational(s);
        std::uint32_t mask = 0;
        int wsign = 1;
        std::vector<int> idxs;
        std::size_t pos = 0;
        while (pos < wedge_text.size()) {
            while (pos < wedge_text.size() && (std::isspace((unsigned char)wedge_text[pos]) ||
                                               wedge_text[pos] == '^'))
                ++pos;
            if (pos >= wedge_text.size()) break;
            if (wedge_text.compare(pos, 2, "xi") != 0)
                throw ParseError("expected wedge factor 'xi<k>'", pos);
            pos += 2;
            std::size_t start = pos;
            while (pos < wedge_text.size() && std::isdigit((unsigned char)wedge_text[pos])) ++pos;
            if (start == pos) throw ParseError("missing wedge index", pos);
            int k = std::stoi(wedge_text.substr(start, pos - start));
            if (k < 1 || k > static_cast<int>(n))
                throw ParseError("wedge index out of range", start);
            idxs.push_back(k - 1);
        }
        for (std::size_t a = 0; a < idxs.size(); ++a)
            for (std::size_t b = a + 1; b < idxs.size(); ++b) {
                if (idxs[a] == idxs[b]) wsign = 0;
                if (idxs[a] > idxs[b]) wsign = -wsign;
            }
        if (wsign == 0) continue;
        for (int i : idxs) mask |= 1u << i;
        parsed.emplace_back(mask, p * Rational(wsign));
        order = std::max(order, p.total_degree());
    }
    Polyvector result(n, order);
    for (auto& [mask, p] : parsed) result.add(mask, p);
    return result;
}

inline std::string to_string(const Polyvector& v, const std::vector<std::string>& vars) {
    if (v.is_zero()) return "0";
    std::string s;
    for (const auto& [mask, p] : v.terms()) {
        if (!s.empty()) s += " + ";
        s += "(" + to_string(p, vars) + ")";
        if (mask) {
            s += " ; ";
            bool first = true;
            for (int i : pv_detail::mask_elements(mask)) {
                if (!first) s += "^";
                s += "xi" + std::to_string(i + 1);
                first = false;
            }
        }
    }
    return s;
}

}  // namespace germ
