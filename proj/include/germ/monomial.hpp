#pragma once

#include <functional>
#include <numeric>
#include <string>
#include <vector>

#include "germ/errors.hpp"

namespace germ {

// Exponent vector of a monomial in a fixed set of variables. The vector
// length equals the ambient variable count.
struct Monomial {
    std::vector<int> e;

    Monomial() = default;
    explicit Monomial(std::size_t nvars) : e(nvars, 0) {}
    explicit Monomial(std::vector<int> exps) : e(std::move(exps)) {}

    std::size_t nvars() const { return e.size(); }
    int degree() const { return std::accumulate(e.begin(), e.end(), 0); }
    bool is_one() const {
        for (int k : e)
            if (k != 0) return false;
        return true;
    }

    friend bool operator==(const Monomial& a, const Monomial& b) { return a.e == b.e; }
    friend bool operator!=(const Monomial& a, const Monomial& b) { return !(a == b); }
};

// Graded-lexicographic order: total degree first, then lexicographic on the
// exponent vector. This is the canonical term and pivot order everywhere.
struct GrlexLess {
    bool operator()(const Monomial& a, const Monomial& b) const {
        int da = a.degree(), db = b.degree();
        if (da != db) return da < db;
        return a.e < b.e;
    }
};

inline Monomial operator*(const Monomial& a, const Monomial& b) {
    Monomial r(a.e);
    for (std::size_t i = 0; i < r.e.size(); ++i) r.e[i] += b.e[i];
    return r;
}

inline std::string to_string(const Monomial& m, const std::vector<std::string>& vars) {
    std::string s;
    for (std::size_t i = 0; i < m.e.size(); ++i) {
        if (m.e[i] == 0) continue;
        if (!s.empty()) s += "*";
        s += vars[i];
        if (m.e[i] > 1) s += "^" + std::to_string(m.e[i]);
    }
    return s.empty() ? "1" : s;
}

// All monomials in `nvars` variables of total degree <= maxdeg, in ascending
// graded-lex order.
inline std::vector<Monomial> monomials_up_to(std::size_t nvars, int maxdeg) {
    std::vector<Monomial> out;
    Monomial cur(nvars);
    for (int d = 0; d <= maxdeg; ++d) {
        // enumerate compositions of d into nvars parts, lexicographically
        std::vector<int> exp(nvars, 0);
        if (nvars == 0) {
            if (d == 0) out.push_back(Monomial(exp));
            continue;
        }
        // iterative enumeration in lexicographic order of exponent vectors
        std::vector<Monomial> level;
        std::vector<int> stack;
        // recursive lambda over positions
        std::function<void(std::size_t, int)> rec = [&](std::size_t pos, int rem) {
            if (pos + 1 == nvars) {
                exp[pos] = rem;
                level.push_back(Monomial(exp));
                return;
            }
            for (int k = 0; k <= rem; ++k) {
                exp[pos] = k;
                rec(pos + 1, rem - k);
            }
        };
        rec(0, d);
        for (auto& m : level) out.push_back(std::move(m));
    }
    return out;
}

}  // namespace germ
