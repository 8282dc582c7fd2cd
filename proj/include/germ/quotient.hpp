#pragma once

#include <algorithm>
#include <memory>
#include <optional>
#include <vector>

#include "germ/errors.hpp"
#include "germ/jetpoly.hpp"
#include "germ/linalg.hpp"

namespace germ {

// Bijection between monomials of degree <= maxdeg and dense indices, in
// ascending graded-lex order.
class MonomialIndexer {
public:
    MonomialIndexer() = default;
    MonomialIndexer(std::size_t nvars, int maxdeg)
        : list_(monomials_up_to(nvars, maxdeg)) {
        for (std::size_t i = 0; i < list_.size(); ++i) index_.emplace(list_[i], i);
    }

    std::int64_t index(const Monomial& m) const {
        auto it = index_.find(m);
        if (it == index_.end())
            throw PreconditionError("monomial exceeds the indexed degree range");
        return it->second;
    }
    const Monomial& monomial(std::int64_t i) const { return list_[static_cast<std::size_t>(i)]; }
    std::size_t size() const { return list_.size(); }

    SparseVec to_vec(const JetPolynomial& p) const {
        SparseVec v;
        for (const auto& [m, c] : p.terms()) v.emplace(index(m), c);
        return v;
    }
    JetPolynomial to_poly(const SparseVec& v, std::size_t nvars, int order) const {
        JetPolynomial p(nvars, order);
        for (const auto& [i, c] : v) p.add_term(monomial(i), c);
        return p;
    }

private:
    std::vector<Monomial> list_;
    std::map<Monomial, std::int64_t, GrlexLess> index_;
};

// Presentation of a jet-order quotient ring: ideal generators, the row
// reduction of the ideal's span, and the complementary (standard) monomial
// basis. `stable` records that re-running at order N+1 reproduced the same
// standard monomials, so the presentation is insensitive to the truncation.
class QuotientPresentation {
public:
    QuotientPresentation() = default;

    std::size_t nvars() const { return nvars_; }
    int order() const { return order_; }
    bool stable() const { return stable_; }
    const std::vector<JetPolynomial>& generators() const { return gens_; }
    const std::vector<Monomial>& monomial_basis() const { return basis_; }
    std::size_t dimension() const { return basis_.size(); }
    const MonomialIndexer& indexer() const { return *indexer_; }

    // Hilbert function of the quotient: count of standard monomials per
    // total degree, trailing zeros trimmed.
    std::vector<std::size_t> hilbert_function() const {
        std::vector<std::size_t> h;
        for (const auto& m : basis_) {
            std::size_t d = static_cast<std::size_t>(m.degree());
            if (h.size() <= d) h.resize(d + 1, 0);
            ++h[d];
        }
        return h;
    }

    // Unique representative of [p] supported on the standard monomials.
    // With `combo_out`, also reports the subtracted ideal combination over
    // span tags (generator index, multiplier monomial); only available when
    // the presentation was built with witness tracking.
    JetPolynomial normal_form(const JetPolynomial& p, SparseVec* combo_out = nullptr) const {
        if (!stable_) throw UnstableError("normal form over an unstable presentation");
        if (p.total_degree() > order_)
            throw PreconditionError("polynomial degree exceeds the presentation order");
        SparseVec v = indexer_->to_vec(p.truncated(order_));
        SparseVec combo;
        elim_->reduce_inplace(v, &combo);
        if (combo_out) *combo_out = std::move(combo);
        return indexer_->to_poly(v, nvars_, order_);
    }

    // Decodes a span tag into (generator index, multiplier monomial).
    std::pair<std::size_t, Monomial> decode_tag(std::int64_t tag) const {
        std::size_t g = static_cast<std::size_t>(tag) / indexer_->size();
        std::int64_t m = tag % static_cast<std::int64_t>(indexer_->size());
        return {g, indexer_->monomial(m)};
    }

    friend QuotientPresentation quotient_basis(std::vector<JetPolynomial> generators, int N,
                                               bool track_witness);

private:
    std::size_t nvars_ = 0;
    int order_ = 0;
    bool stable_ = false;
    std::vector<JetPolynomial> gens_;
    std::vector<Monomial> basis_;
    std::shared_ptr<MonomialIndexer> indexer_;
    std::shared_ptr<SparseElim> elim_;
};

namespace detail {

// Standard monomials of the span {trunc(m*g, M)} inside jets of order M.
// The returned eliminator is keyed by the shared indexer.
inline std::vector<Monomial> reduce_span(const std::vector<JetPolynomial>& gens, int M,
                                         const MonomialIndexer& ix, SparseElim& elim,
                                         bool track) {
    for (std::size_t g = 0; g < gens.size(); ++g) {
        JetPolynomial gt = gens[g].truncated(M);
        if (gt.is_zero()) continue;
        int val = gt.valuation();
        for (const auto& mult : monomials_up_to(gt.nvars(), M - val)) {
            JetPolynomial row = (monomial_poly(mult, Rational(1)) * gt).truncated(M);
            if (row.is_zero()) continue;
            if (track) {
                elim.insert_tagged(ix.to_vec(row),
                                   static_cast<std::int64_t>(g) *
                                           static_cast<std::int64_t>(ix.size()) +
                                       ix.index(mult));
            } else {
                elim.insert(ix.to_vec(row));
            }
        }
    }
    std::vector<Monomial> standard;
    for (std::size_t i = 0; i < ix.size(); ++i) {
        if (ix.monomial(i).degree() > M) break;
        if (!elim.is_pivot(static_cast<std::int64_t>(i)))
            standard.push_back(ix.monomial(i));
    }
    return standard;
}

}  // namespace detail

// Row-reduces the ideal span inside the order-N jet space and returns the
// complementary monomial basis. The probe at order N+1 sets the stability
// flag: the presentation is stable exactly when both orders produce the same
// standard monomial set (so in particular no standard monomial of degree N+1
// survives).
inline QuotientPresentation quotient_basis(std::vector<JetPolynomial> generators, int N,
                                           bool track_witness = false) {
    if (N < 1) throw PreconditionError("jet order must be >= 1");
    std::size_t nvars = 0;
    for (const auto& g : generators) nvars = std::max(nvars, g.nvars());
    QuotientPresentation q;
    q.nvars_ = nvars;
    q.order_ = N;
    q.gens_ = std::move(generators);
    q.indexer_ = std::make_shared<MonomialIndexer>(nvars, N + 1);
    q.elim_ = std::make_shared<SparseElim>(track_witness);
    q.basis_ = detail::reduce_span(q.gens_, N, *q.indexer_, *q.elim_, track_witness);

    SparseElim probe(false);
    std::vector<Monomial> basis_next = detail::reduce_span(q.gens_, N + 1, *q.indexer_, probe, false);
    q.stable_ = (q.basis_ == basis_next);
    return q;
}

}  // namespace germ
