#pragma once

#include <optional>
#include <vector>

#include "germ/quotient.hpp"

namespace germ {

// The n partial derivatives of W, each truncated one order below W.
inline std::vector<JetPolynomial> jacobian_ideal(const JetPolynomial& W) {
    if (!W.constant_term().is_zero())
        throw PreconditionError("potential must vanish at the origin");
    std::vector<JetPolynomial> gens;
    gens.reserve(W.nvars());
    for (std::size_t i = 0; i < W.nvars(); ++i) gens.push_back(W.derivative(i));
    return gens;
}

struct JetOptions {
    std::optional<int> order;  // initial jet order; default 2*deg(W)
    int extra_orders = 8;      // how far past the initial order to probe
    int default_order(const JetPolynomial& W) const {
        return order.value_or(2 * std::max(W.total_degree(), 1));
    }
};

namespace detail {

// Requires W(0)=0 and dW(0)=0; the paper-side assumption of a critical point
// at the origin.
inline void require_critical_at_origin(const JetPolynomial& W) {
    if (W.is_zero()) throw PreconditionError("potential is identically zero");
    if (!W.constant_term().is_zero())
        throw PreconditionError("potential must vanish at the origin");
    if (W.valuation() < 2)
        throw PreconditionError("potential must have no linear part (critical point at 0)");
}

// Runs quotient_basis at growing orders until both the basis and its
// dimension stop moving; an input with a non-isolated critical locus never
// settles and comes back flagged unstable.
inline QuotientPresentation stabilized_quotient(const std::vector<JetPolynomial>& gens,
                                                int n0, int cap, bool witness) {
    QuotientPresentation q;
    for (int n = n0; n <= cap; ++n) {
        q = quotient_basis(gens, n, witness);
        if (q.stable()) return q;
    }
    return q;  // last attempt, stable() == false
}

}  // namespace detail

// Milnor algebra M_W = jets/(dW); the dimension is the Milnor number when the
// presentation is stable.
inline QuotientPresentation milnor_algebra(const JetPolynomial& W, JetOptions opts = {},
                                           bool witness = false) {
    detail::require_critical_at_origin(W);
    int n0 = opts.default_order(W);
    return detail::stabilized_quotient(jacobian_ideal(W.with_order(n0 + 1)), n0,
                                       n0 + opts.extra_orders, witness);
}

// Tjurina algebra T_W = jets/(dW, W).
inline QuotientPresentation tjurina_algebra(const JetPolynomial& W, JetOptions opts = {}) {
    detail::require_critical_at_origin(W);
    int n0 = opts.default_order(W);
    std::vector<JetPolynomial> gens = jacobian_ideal(W.with_order(n0 + 1));
    gens.push_back(W);
    return detail::stabilized_quotient(gens, n0, n0 + opts.extra_orders, false);
}

// Verdict of the quasi-homogeneity test. When the class of W vanishes we also
// return the membership witness gamma with W = sum gamma_i * dW_i, read off
// the row reduction; the identity holds exactly modulo m^{order+1}.
struct QuasiHomogeneity {
    bool quasi_homogeneous = false;
    JetPolynomial residue;             // normal form of W in M_W
    std::vector<JetPolynomial> gamma;  // membership witness (empty if residue != 0)
    int order = 0;
};

inline QuasiHomogeneity is_quasi_homogeneous(const JetPolynomial& W, JetOptions opts = {}) {
    QuotientPresentation m = milnor_algebra(W, opts, /*witness=*/true);
    if (!m.stable())
        throw UnstableError("Milnor presentation did not stabilize; cannot test the class of W");
    QuasiHomogeneity out;
    out.order = m.order();
    SparseVec combo;
    out.residue = m.normal_form(W.with_order(m.order()), &combo);
    out.quasi_homogeneous = out.residue.is_zero();
    if (out.quasi_homogeneous) {
        out.gamma.assign(W.nvars(), JetPolynomial(W.nvars(), m.order()));
        for (const auto& [tag, c] : combo) {
            auto [g, mult] = m.decode_tag(tag);
            // reduce_inplace reports the negated combination
            out.gamma[g].add_term(mult, -c);
        }
    }
    return out;
}

}  // namespace germ
