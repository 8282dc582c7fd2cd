#pragma once

#include <map>
#include <vector>

#include "germ/linalg.hpp"
#include "germ/superspace.hpp"

namespace germ {

using BasisTuple = std::vector<int>;

// Sparse multilinear map source^{arity} -> target between graded spaces.
// `internal_parity` is how the map shifts element parities: every entry
// satisfies parity(output) = internal_parity + sum parity(inputs) (mod 2).
//
// The cochain-complex degree of the map is internal_parity + arity; the
// shifted (bracket-side) parity is that plus one. Products m_k carry
// internal parity k mod 2, so they are all shifted-odd.
class SuperMap {
public:
    SuperMap() = default;
    SuperMap(SuperSpacePtr source, SuperSpacePtr target, int arity, int internal_parity)
        : src_(std::move(source)),
          dst_(std::move(target)),
          arity_(arity),
          parity_(internal_parity & 1) {}

    int arity() const { return arity_; }
    int internal_parity() const { return parity_; }
    int total_degree() const { return (parity_ + arity_) & 1; }
    int shifted_parity() const { return (parity_ + arity_ + 1) & 1; }
    const SuperSpacePtr& source() const { return src_; }
    const SuperSpacePtr& target() const { return dst_; }
    bool is_zero() const { return entries_.empty(); }
    const std::map<BasisTuple, SparseVec>& entries() const { return entries_; }

    void add_entry(const BasisTuple& inputs, int output, const Rational& c) {
        if (c.is_zero()) return;
        if (static_cast<int>(inputs.size()) != arity_)
            throw PreconditionError("entry arity mismatch");
        int p = dst_->parity(output);
        for (int i : inputs) p ^= src_->parity(i);
        if (p != parity_)
            throw SchemaError("entry violates the parity rule: " + entry_name(inputs, output));
        auto& vec = entries_[inputs];
        auto [it, inserted] = vec.emplace(output, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) {
                vec.erase(it);
                if (vec.empty()) entries_.erase(inputs);
            }
        }
    }

    // Exact evaluation on a basis tuple.
    SparseVec apply(const BasisTuple& inputs) const {
        if (static_cast<int>(inputs.size()) != arity_)
            throw PreconditionError("arity mismatch in apply");
        auto it = entries_.find(inputs);
        return it == entries_.end() ? SparseVec{} : it->second;
    }

    SuperMap& operator+=(const SuperMap& o) {
        if (entries_.empty() && arity_ != o.arity_) {
            // adopting the other operand's shape keeps zero maps composable
            arity_ = o.arity_;
            parity_ = o.parity_;
            src_ = o.src_;
            dst_ = o.dst_;
        }
        for (const auto& [in, out] : o.entries_)
            for (const auto& [j, c] : out) add_entry(in, static_cast<int>(j), c);
        return *this;
    }
    SuperMap& operator*=(const Rational& c) {
        if (c.is_zero()) {
            entries_.clear();
            return *this;
        }
        for (auto& [in, out] : entries_)
            for (auto& [j, v] : out) v *= c;
        return *this;
    }
    friend SuperMap operator+(SuperMap a, const SuperMap& b) { return a += b; }
    friend SuperMap operator*(SuperMap a, const Rational& c) { return a *= c; }
    friend SuperMap operator*(const Rational& c, SuperMap a) { return a *= c; }
    friend SuperMap operator-(SuperMap a, const SuperMap& b) {
        SuperMap nb = b;
        nb *= Rational(-1);
        return a += nb;
    }

    friend bool operator==(const SuperMap& a, const SuperMap& b) {
        return a.arity_ == b.arity_ && a.parity_ == b.parity_ && a.entries_ == b.entries_;
    }

    std::string entry_name(const BasisTuple& inputs, int output) const {
        std::string s = "(";
        for (std::size_t i = 0; i < inputs.size(); ++i) {
            if (i) s += ",";
            s += src_->name(inputs[i]);
        }
        s += ") -> " + dst_->name(output);
        return s;
    }

private:
    SuperSpacePtr src_, dst_;
    int arity_ = 0;
    int parity_ = 0;
    std::map<BasisTuple, SparseVec> entries_;
};

namespace sign_detail {

// Degree-shift sign of a basis tuple: sum over slots of
// (arity - slot) * parity, mod 2. This is the per-entry sign that mediates
// between the stored (unshifted) coefficients and the parity-shifted
// evaluation in which all composition signs are pure Koszul. With this
// normalization, compositions over purely even spaces carry no signs at all.
inline int dec_sign(const SuperSpace& space, const BasisTuple& t) {
    int e = 0;
    std::size_t k = t.size();
    for (std::size_t j = 0; j < k; ++j)
        if ((k - 1 - j) & 1) e ^= space.parity(t[j]);
    return e;
}

}  // namespace sign_detail

// Composition at one input slot (1-based): plugs g's output into f's slot i.
// Signs are the shifted-Koszul ones expressed on the stored entries.
inline SuperMap compose_at(const SuperMap& f, const SuperMap& g, int slot) {
    if (slot < 1 || slot > f.arity()) throw PreconditionError("composition slot out of range");
    const SuperSpace& sp = *f.source();
    SuperMap r(f.source(), f.target(), f.arity() + g.arity() - 1,
               (f.internal_parity() + g.internal_parity()) & 1);
    int sg = g.shifted_parity();
    for (const auto& [fu, fout] : f.entries()) {
        // Koszul sign of moving g past the first slot-1 inputs
        int pass = 0;
        if (sg)
            for (int j = 0; j < slot - 1; ++j) pass ^= sp.parity(fu[j]) ^ 1;
        int base = sign_detail::dec_sign(sp, fu) ^ pass;
        for (const auto& [gv, gout] : g.entries()) {
            auto git = gout.find(fu[slot - 1]);
            if (git == gout.end()) continue;
            BasisTuple w;
            w.reserve(r.arity());
            w.insert(w.end(), fu.begin(), fu.begin() + (slot - 1));
            w.insert(w.end(), gv.begin(), gv.end());
            w.insert(w.end(), fu.begin() + slot, fu.end());
            int e = base ^ sign_detail::dec_sign(sp, gv) ^ sign_detail::dec_sign(sp, w);
            Rational c = git->second * (e ? Rational(-1) : Rational(1));
            for (const auto& [o, cf] : fout) r.add_entry(w, static_cast<int>(o), cf * c);
        }
    }
    return r;
}

// Brace composition f o g = sum over slots, and the Gerstenhaber bracket
// {f,g} = f o g - (-1)^{(|f|-1)(|g|-1)} g o f.
inline SuperMap circ(const SuperMap& f, const SuperMap& g) {
    SuperMap r(f.source(), f.target(), f.arity() + g.arity() - 1,
               (f.internal_parity() + g.internal_parity()) & 1);
    for (int i = 1; i <= f.arity(); ++i) r += compose_at(f, g, i);
    return r;
}

inline SuperMap gerstenhaber_map(const SuperMap& f, const SuperMap& g) {
    SuperMap r = circ(f, g);
    SuperMap s = circ(g, f);
    if (f.shifted_parity() && g.shifted_parity())
        r += s;
    else
        r += s * Rational(-1);
    return r;
}

}  // namespace germ
