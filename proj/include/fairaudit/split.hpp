#pragma once

// Shared split search for the CART classifier and the GBM regression trees.
// Per feature, the sorted distinct values are computed once per training set
// and every row stores its value's rank; a node then accumulates per-rank
// statistics in O(rows) and scans ranks in order. Candidate thresholds are
// the midpoints of consecutive node-observed distinct values, ties broken by
// lowest feature index then lowest threshold.

#include <algorithm>
#include <cstdint>
#include <span>
#include <vector>

#include "errors.hpp"

namespace fairaudit {

class BinnedColumns {
public:
    BinnedColumns(const double* x, std::size_t n, std::size_t d) : n_(n), d_(d) {
        uniques_.resize(d);
        ranks_.resize(d);
        std::vector<double> col(n);
        for (std::size_t j = 0; j < d; ++j) {
            for (std::size_t i = 0; i < n; ++i) col[i] = x[i * d + j];
            std::vector<double> u = col;
            std::sort(u.begin(), u.end());
            u.erase(std::unique(u.begin(), u.end()), u.end());
            uniques_[j] = u;
            auto& r = ranks_[j];
            r.resize(n);
            for (std::size_t i = 0; i < n; ++i) {
                r[i] = static_cast<std::uint32_t>(
                    std::lower_bound(u.begin(), u.end(), col[i]) - u.begin());
            }
        }
    }

    std::size_t n_rows() const { return n_; }
    std::size_t n_features() const { return d_; }
    std::size_t n_uniques(std::size_t j) const { return uniques_[j].size(); }
    double value(std::size_t j, std::size_t rank) const { return uniques_[j][rank]; }
    std::uint32_t rank(std::size_t j, std::size_t i) const { return ranks_[j][i]; }

private:
    std::size_t n_, d_;
    std::vector<std::vector<double>> uniques_;
    std::vector<std::vector<std::uint32_t>> ranks_;
};

struct SplitChoice {
    bool found = false;
    std::size_t feature = 0;
    double threshold = 0.0;  // rows go left iff x[feature] <= threshold
    double objective = 0.0;  // minimized
};

// Statistics a split criterion accumulates per rank and aggregates per side.
// Gini: (count, positives). GBM: (hessian-ish weight, gradient sum).
struct SideStats {
    double w = 0.0; // count or hessian sum
    double g = 0.0; // positive count or gradient sum
    std::size_t rows = 0;

    void add(const SideStats& o) {
        w += o.w;
        g += o.g;
        rows += o.rows;
    }
};

// Finds the objective-minimizing split of `rows` in the binned data.
// `objective(left, right)` must return the value to minimize; candidates with
// either side smaller than min_samples_leaf are skipped.
template <typename RowStat, typename Objective>
SplitChoice find_best_split(const BinnedColumns& bins, std::span<const std::size_t> rows,
                            RowStat row_stat, Objective objective,
                            std::size_t min_samples_leaf) {
    SplitChoice best;
    SideStats total;
    for (std::size_t i : rows) total.add(row_stat(i));

    std::vector<SideStats> per_rank;
    for (std::size_t j = 0; j < bins.n_features(); ++j) {
        const std::size_t u = bins.n_uniques(j);
        if (u < 2) continue;
        per_rank.assign(u, SideStats{});
        for (std::size_t i : rows) per_rank[bins.rank(j, i)].add(row_stat(i));

        SideStats left;
        for (std::size_t r = 0; r + 1 < u; ++r) {
            if (per_rank[r].rows == 0) continue;
            left.add(per_rank[r]);
            // the next observed rank defines the candidate midpoint
            std::size_t next = r + 1;
            while (next < u && per_rank[next].rows == 0) ++next;
            if (next == u) break; // r holds the node's largest value
            if (left.rows < min_samples_leaf || total.rows - left.rows < min_samples_leaf)
                continue;
            SideStats right;
            right.w = total.w - left.w;
            right.g = total.g - left.g;
            right.rows = total.rows - left.rows;
            const double obj = objective(left, right);
            if (!best.found || obj < best.objective) {
                best.found = true;
                best.feature = j;
                best.threshold = 0.5 * (bins.value(j, r) + bins.value(j, next));
                best.objective = obj;
            }
        }
    }
    return best;
}

} // namespace fairaudit
