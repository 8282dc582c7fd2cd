#pragma once

#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "germ/errors.hpp"

namespace germ {

// Identifier of the sign convention used throughout: all compositions are
// evaluated on the parity-shifted space with pure Koszul signs, and entries
// are stored/displayed in the unshifted convention via the per-entry
// degree-shift sign. Reports embed this id so numbers are reproducible.
inline constexpr std::string_view kSignConvention = "shifted-koszul-v1";

// Z/2-graded vector space with a chosen ordered basis.
class SuperSpace {
public:
    SuperSpace() = default;
    explicit SuperSpace(std::vector<std::pair<std::string, int>> basis) {
        for (auto& [name, par] : basis) {
            if (index_.count(name)) throw SchemaError("duplicate basis name '" + name + "'");
            index_.emplace(name, names_.size());
            names_.push_back(name);
            parities_.push_back(par & 1);
        }
    }

    std::size_t dim() const { return names_.size(); }
    int parity(std::size_t i) const { return parities_[i]; }
    int shifted_parity(std::size_t i) const { return parities_[i] ^ 1; }
    const std::string& name(std::size_t i) const { return names_[i]; }
    const std::vector<int>& parities() const { return parities_; }

    std::size_t index(const std::string& name) const {
        auto it = index_.find(name);
        if (it == index_.end()) throw SchemaError("unknown basis name '" + name + "'");
        return it->second;
    }
    bool has(const std::string& name) const { return index_.count(name) != 0; }

    friend bool operator==(const SuperSpace& a, const SuperSpace& b) {
        return a.names_ == b.names_ && a.parities_ == b.parities_;
    }

private:
    std::vector<std::string> names_;
    std::vector<int> parities_;
    std::map<std::string, std::size_t> index_;
};

using SuperSpacePtr = std::shared_ptr<const SuperSpace>;

// Sign produced by reordering homogeneous elements with the given shifted
// parities: out[j] = in[perm[j]]. A transposition of two shifted-odd
// elements contributes -1.
inline int koszul_sign(const std::vector<int>& shifted_parities,
                       const std::vector<std::size_t>& perm) {
    if (perm.size() != shifted_parities.size())
        throw PreconditionError("permutation size mismatch");
    int sign = 1;
    for (std::size_t a = 0; a < perm.size(); ++a)
        for (std::size_t b = a + 1; b < perm.size(); ++b)
            if (perm[a] > perm[b] && (shifted_parities[perm[a]] & 1) &&
                (shifted_parities[perm[b]] & 1))
                sign = -sign;
    return sign;
}

}  // namespace germ
