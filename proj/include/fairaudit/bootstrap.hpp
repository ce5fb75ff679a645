#pragma once

// Percentile bootstrap for the fairness indices, the cross-check for the
// delta-method intervals. Rows are resampled with replacement; replicates on
// which the statistic is undefined are dropped and counted, and more than 10%
// undefined aborts with an instability error. Each replicate draws from its
// own derived seed, so replicates are order-independent and the result is a
// pure function of (inputs, B, level, seed).

#include <cstdint>
#include <vector>

#include "counts.hpp"
#include "errors.hpp"
#include "inference.hpp"
#include "metrics.hpp"
#include "rng.hpp"
#include "stats.hpp"

namespace fairaudit {

enum class BootstrapStatistic { DI, TPRatio, TNRatio };

struct BootstrapResult {
    CIEstimate ci;                  // percentile interval; sigma = sqrt(n)*sd(replicates)
    std::size_t undefined_replicates = 0;
    std::size_t total_replicates = 0;
    std::vector<double> replicates; // defined replicate statistics, draw order
};

namespace detail {

inline double statistic_value(const GroupedCounts& c, BootstrapStatistic stat) {
    switch (stat) {
        case BootstrapStatistic::DI:
            return c.has_predictions ? disparate_impact_of_predictions(c).value
                                     : disparate_impact(c).value;
        case BootstrapStatistic::TPRatio: return rate_ratio(c, RateKind::TP).value;
        case BootstrapStatistic::TNRatio: return rate_ratio(c, RateKind::TN).value;
    }
    throw ArgumentError("unknown bootstrap statistic");
}

} // namespace detail

inline BootstrapResult bootstrap_ci(const std::vector<std::uint8_t>& y,
                                    const std::vector<std::uint8_t>& s,
                                    const std::vector<std::uint8_t>* yhat,
                                    BootstrapStatistic stat, std::size_t B, double level,
                                    std::uint64_t seed) {
    if (B < 100) throw ArgumentError("bootstrap_ci: B must be at least 100");
    if (level <= 0.0 || level >= 1.0)
        throw ArgumentError("bootstrap_ci: level must be in (0,1)");
    if ((stat == BootstrapStatistic::TPRatio || stat == BootstrapStatistic::TNRatio) && !yhat)
        throw ArgumentError("bootstrap_ci: rate-ratio statistics require predictions");

    // the statistic must be defined on the full sample
    const GroupedCounts full = count_groups(y, s, yhat);
    const double point = detail::statistic_value(full, stat);

    const std::size_t n = y.size();
    BootstrapResult out;
    out.total_replicates = B;
    out.replicates.reserve(B);

    std::vector<std::uint8_t> ry(n), rs(n), rg(yhat ? n : 0);
    for (std::size_t b = 0; b < B; ++b) {
        Rng rng(derive_seed(seed, b));
        for (std::size_t i = 0; i < n; ++i) {
            const std::size_t pick = static_cast<std::size_t>(rng.next_below(n));
            ry[i] = y[pick];
            rs[i] = s[pick];
            if (yhat) rg[i] = (*yhat)[pick];
        }
        try {
            const GroupedCounts c = count_groups(ry, rs, yhat ? &rg : nullptr);
            out.replicates.push_back(detail::statistic_value(c, stat));
        } catch (const UndefinedMetricError&) {
            ++out.undefined_replicates;
        }
    }

    if (out.undefined_replicates * 10 > B)
        throw InstabilityError("bootstrap unstable: statistic undefined on too many replicates",
                               out.undefined_replicates, B);

    const double alpha = 1.0 - level;
    out.ci.point = point;
    out.ci.n = n;
    out.ci.level = level;
    out.ci.method = CIMethod::BootstrapPercentile;
    out.ci.lower = quantile_type7(out.replicates, alpha / 2.0);
    out.ci.upper = quantile_type7(out.replicates, 1.0 - alpha / 2.0);
    out.ci.sigma = std::sqrt(static_cast<double>(n)) * sample_sd(out.replicates);
    return out;
}

} // namespace fairaudit
