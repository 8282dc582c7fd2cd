#pragma once

#include <limits>
#include <map>
#include <string>
#include <vector>

#include "germ/monomial.hpp"
#include "germ/rational.hpp"

namespace germ {

// Order value meaning "no truncation": the polynomial is exact.
inline constexpr int kUnboundedOrder = std::numeric_limits<int>::max();

// Sparse polynomial with exact rational coefficients, truncated at a jet
// order: a value of order N represents a class mod m^{N+1}. Terms are kept in
// ascending graded-lex order and never store zero coefficients.
//
// Arithmetic takes the min of the operand orders (the jet class of the result
// is only defined there). Values produced by the parser are exact
// polynomials; lift them with with_order() before mixing jet orders.
class JetPolynomial {
public:
    using TermMap = std::map<Monomial, Rational, GrlexLess>;

    JetPolynomial() : nvars_(0), order_(kUnboundedOrder) {}
    explicit JetPolynomial(std::size_t nvars, int order = kUnboundedOrder)
        : nvars_(nvars), order_(order) {}

    std::size_t nvars() const { return nvars_; }
    int order() const { return order_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    int total_degree() const {
        int d = 0;
        for (const auto& [m, c] : terms_) d = std::max(d, m.degree());
        return d;
    }

    // Smallest total degree of a nonzero term; degree of 0 is reported as -1.
    int valuation() const {
        if (terms_.empty()) return -1;
        return terms_.begin()->first.degree();
    }

    const Rational* coeff(const Monomial& m) const {
        auto it = terms_.find(m);
        return it == terms_.end() ? nullptr : &it->second;
    }

    Rational constant_term() const {
        auto it = terms_.find(Monomial(nvars_));
        return it == terms_.end() ? Rational(0) : it->second;
    }

    void add_term(const Monomial& m, const Rational& c) {
        if (is_zero_coeff(c)) return;
        if (m.degree() > order_) return;
        auto [it, inserted] = terms_.emplace(m, c);
        if (!inserted) {
            it->second += c;
            if (is_zero_coeff(it->second)) terms_.erase(it);
        }
    }

    JetPolynomial& operator+=(const JetPolynomial& o) {
        merge_order(o);
        for (const auto& [m, c] : o.terms_) add_term(m, c);
        return *this;
    }
    JetPolynomial& operator-=(const JetPolynomial& o) {
        merge_order(o);
        for (const auto& [m, c] : o.terms_) add_term(m, -c);
        return *this;
    }
    JetPolynomial& operator*=(const Rational& c) {
        if (is_zero_coeff(c)) {
            terms_.clear();
            return *this;
        }
        for (auto& [m, v] : terms_) v *= c;
        return *this;
    }

    friend JetPolynomial operator+(JetPolynomial a, const JetPolynomial& b) { return a += b; }
    friend JetPolynomial operator-(JetPolynomial a, const JetPolynomial& b) { return a -= b; }
    friend JetPolynomial operator*(JetPolynomial a, const Rational& c) { return a *= c; }
    friend JetPolynomial operator*(const Rational& c, JetPolynomial a) { return a *= c; }

    friend JetPolynomial operator*(const JetPolynomial& a, const JetPolynomial& b) {
        JetPolynomial r(a.nvars_, std::min(a.order_, b.order_));
        for (const auto& [ma, ca] : a.terms_) {
            if (ma.degree() > r.order_) break;
            for (const auto& [mb, cb] : b.terms_) {
                if (ma.degree() + mb.degree() > r.order_) break;
                r.add_term(ma * mb, ca * cb);
            }
        }
        return r;
    }

    friend bool operator==(const JetPolynomial& a, const JetPolynomial& b) {
        return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
    }
    friend bool operator!=(const JetPolynomial& a, const JetPolynomial& b) { return !(a == b); }

    // Same terms up to degree N; the validity horizon becomes N.
    JetPolynomial truncated(int N) const {
        JetPolynomial r(nvars_, N);
        for (const auto& [m, c] : terms_) {
            if (m.degree() > N) break;
            r.terms_.emplace(m, c);
        }
        return r;
    }

    // Re-labels the validity horizon. Raising the order of a value that was
    // already truncated is only sound for exact polynomials; callers assert
    // that by using it right after parsing or on term-complete data.
    JetPolynomial with_order(int N) const {
        JetPolynomial r = truncated(N);
        r.order_ = N;
        return r;
    }

    JetPolynomial derivative(std::size_t var) const {
        JetPolynomial r(nvars_, order_ == kUnboundedOrder ? kUnboundedOrder : order_ - 1);
        for (const auto& [m, c] : terms_) {
            if (m.e[var] == 0) continue;
            Monomial d = m;
            d.e[var] -= 1;
            r.add_term(d, c * m.e[var]);
        }
        return r;
    }

    static bool is_zero_coeff(const Rational& c) { return c.is_zero(); }

private:
    void merge_order(const JetPolynomial& o) {
        if (o.order_ < order_) {
            order_ = o.order_;
            terms_ = truncated(order_).terms_;
        }
    }

    std::size_t nvars_;
    int order_;
    TermMap terms_;
};

inline JetPolynomial monomial_poly(const Monomial& m, const Rational& c,
                                   int order = kUnboundedOrder) {
    JetPolynomial p(m.nvars(), order);
    p.add_term(m, c);
    return p;
}

inline std::string to_string(const JetPolynomial& p, const std::vector<std::string>& vars) {
    if (p.is_zero()) return "0";
    std::string s;
    for (const auto& [m, c] : p.terms()) {
        std::string cs = to_string(c);
        bool neg = cs.size() && cs[0] == '-';
        if (s.empty()) {
            if (neg) s += "-", cs = cs.substr(1);
        } else {
            s += neg ? " - " : " + ";
            if (neg) cs = cs.substr(1);
        }
        if (m.is_one()) {
            s += cs;
        } else if (cs == "1") {
            s += to_string(m, vars);
        } else {
            s += cs + "*" + to_string(m, vars);
        }
    }
    return s;
}

}  // namespace germ
