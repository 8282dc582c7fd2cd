#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "germ/rational.hpp"

namespace germ {

// Sparse vector over integer coordinates, kept in ascending coordinate order.
using SparseVec = std::map<std::int64_t, Rational>;

inline void axpy(SparseVec& dst, const Rational& c, const SparseVec& src) {
    if (c.is_zero()) return;
    for (const auto& [col, v] : src) {
        auto [it, inserted] = dst.emplace(col, c * v);
        if (!inserted) {
            it->second += c * v;
            if (it->second.is_zero()) dst.erase(it);
        }
    }
}

// Incremental exact Gaussian elimination. Stored rows are monic and keyed by
// their leading (smallest) coordinate; rows are not inter-reduced, but
// reduction in ascending coordinate order still yields the unique normal form
// supported on non-pivot coordinates. Optionally tracks every stored row as a
// combination of the inserted vectors.
class SparseElim {
public:
    struct Row {
        SparseVec coeffs;  // monic, smallest coordinate first
        SparseVec combo;   // expression over insertion tags (if tracked)
    };

    explicit SparseElim(bool track_combos = false) : track_(track_combos) {}

    // v := normal form of v; combo (if tracking) accumulates the coefficients
    // of the stored-row combination that was subtracted, expressed over
    // insertion tags. On return v has no pivot coordinates.
    void reduce_inplace(SparseVec& v, SparseVec* combo) const {
        SparseVec out;
        while (!v.empty()) {
            auto front = *v.begin();
            auto it = rows_.find(front.first);
            if (it == rows_.end()) {
                out.insert(out.end(), front);
                v.erase(v.begin());
                continue;
            }
            v.erase(v.begin());
            const Row& row = it->second;
            auto t = row.coeffs.begin();
            for (++t; t != row.coeffs.end(); ++t) {
                auto [jt, inserted] = v.emplace(t->first, -front.second * t->second);
                if (!inserted) {
                    jt->second -= front.second * t->second;
                    if (jt->second.is_zero()) v.erase(jt);
                }
            }
            if (track_ && combo) axpy(*combo, -front.second, row.combo);
        }
        v = std::move(out);
    }

    // Inserts a vector (with an optional tag combination describing it);
    // returns true if the rank grew.
    bool insert(SparseVec v, SparseVec combo = {}) {
        reduce_inplace(v, track_ ? &combo : nullptr);
        if (v.empty()) return false;
        Rational inv = Rational(1) / v.begin()->second;
        if (inv != 1) {
            for (auto& [c, val] : v) val *= inv;
            if (track_)
                for (auto& [c, val] : combo) val *= inv;
        }
        std::int64_t lead = v.begin()->first;
        rows_.emplace(lead, Row{std::move(v), std::move(combo)});
        return true;
    }

    bool insert_tagged(SparseVec v, std::int64_t tag) {
        SparseVec combo;
        combo.emplace(tag, Rational(1));
        return insert(std::move(v), std::move(combo));
    }

    std::size_t rank() const { return rows_.size(); }
    bool is_pivot(std::int64_t col) const { return rows_.count(col) != 0; }
    const std::map<std::int64_t, Row>& rows() const { return rows_; }

private:
    bool track_;
    std::map<std::int64_t, Row> rows_;
};

// Rank and deterministic kernel basis of the linear map whose j-th column
// (image of source coordinate j) is columns[j]. Kernel vectors are supported
// on source coordinates; each has leading coefficient 1 at its largest
// free coordinate.
struct RankKernel {
    std::size_t rank = 0;
    std::vector<SparseVec> kernel;
};

inline RankKernel rank_kernel(const std::vector<SparseVec>& columns) {
    SparseElim elim(true);
    RankKernel out;
    for (std::size_t j = 0; j < columns.size(); ++j) {
        SparseVec v = columns[j];
        SparseVec combo;
        combo.emplace(static_cast<std::int64_t>(j), Rational(1));
        if (!elim.insert(std::move(v), std::move(combo))) {
            // dependent column: recover the dependency as a kernel vector
            SparseVec w = columns[j];
            SparseVec dep;
            dep.emplace(static_cast<std::int64_t>(j), Rational(1));
            elim.reduce_inplace(w, &dep);
            out.kernel.push_back(std::move(dep));
        }
    }
    out.rank = elim.rank();
    return out;
}

// Solves sum_j x_j * columns[j] = b exactly. Returns feasibility and, when
// feasible, the unique solution with all free coordinates set to zero.
struct LinearSolution {
    bool feasible = false;
    SparseVec x;
};

inline LinearSolution solve_columns(const std::map<std::int64_t, SparseVec>& columns,
                                    const SparseVec& b) {
    SparseElim elim(true);
    for (const auto& [j, col] : columns) elim.insert_tagged(col, j);
    SparseVec r = b;
    SparseVec combo;
    elim.reduce_inplace(r, &combo);
    LinearSolution sol;
    if (!r.empty()) return sol;
    sol.feasible = true;
    for (auto& [j, c] : combo)
        if (!c.is_zero()) sol.x.emplace(j, -c);
    return sol;
}

}  // namespace germ
