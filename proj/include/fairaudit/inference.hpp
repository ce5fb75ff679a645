#pragma once

// Exact asymptotic inference for the fairness indices via the Delta method.
//
// Both estimators share one shape: T = (p0_hat/r0_hat)/(p1_hat/r1_hat) =
// phi(Z_bar) with phi(x) = x1*x4/(x2*x3) and Z the Bernoulli indicator vector
//   DI:          Z = (1{g=1,S=0}, 1{g=1,S=1}, 1{S=0},     1{S=1})
//   TP ratio:    Z = (1{g=1,Y=1,S=0}, 1{g=1,Y=1,S=1}, 1{Y=1,S=0}, 1{Y=1,S=1})
//   TN ratio:    same with g=0, Y=0.
// The component events satisfy: events 1 and 2 disjoint, 3 and 4 disjoint,
// event 1 implies 3, 2 implies 4, 1 and 4 disjoint, 2 and 3 disjoint. The
// covariance of Z follows from those product rules alone:
//   Cov = [ p0(1-p0)  -p0*p1     p0(1-r0)  -p0*r1
//           -p0*p1    p1(1-p1)  -p1*r0     p1(1-r1)
//           p0(1-r0)  -p1*r0    r0(1-r0)   -r0*r1
//           -p0*r1    p1(1-r1)  -r0*r1     r1(1-r1) ]
// (the published display of the TP-ratio covariance has two sign/symbol slips
// at the (2,1) and (4,1) entries; the derivation above is what Monte-Carlo
// confirms). sigma = sqrt(grad_phi' Cov grad_phi) with plug-in frequencies,
// and (T ± sigma/sqrt(n) * z_{1-alpha/2}) is the level-(1-alpha) interval.

#include <array>
#include <cmath>
#include <cstdint>
#include <string>

#include "counts.hpp"
#include "errors.hpp"
#include "metrics.hpp"
#include "stats.hpp"

namespace fairaudit {

enum class DITarget { Data, Classifier };
enum class TestDirection {
    FairnessEvidence,       // H0: DI <= beta vs H1: DI > beta
    DiscriminationEvidence, // H0: DI >= beta vs H1: DI < beta
};

enum class CIMethod { DeltaMethod, BootstrapPercentile };

struct CIEstimate {
    double point = 0.0;
    double sigma = 0.0; // asymptotic sd of sqrt(n)*(T - truth)
    std::size_t n = 0;
    double level = 0.0; // confidence level in (0,1)
    double lower = 0.0, upper = 0.0;
    CIMethod method = CIMethod::DeltaMethod;
};

struct TestResult {
    double statistic = 0.0; // sqrt(n) * (T - beta) / sigma
    double beta = 0.0;
    double alpha = 0.0;
    bool reject = false;
    double p_value = 1.0;
    TestDirection direction = TestDirection::FairnessEvidence;
};

// sigma for T = (p0/r0)/(p1/r1) from plug-in probabilities of the nested
// disjoint-indicator vector described above.
inline double ratio_of_ratios_sigma(double p0, double p1, double r0, double r1) {
    if (p0 <= 0.0 || p1 <= 0.0 || r0 <= 0.0 || r1 <= 0.0)
        throw DegenerateVarianceError(
            "asymptotic variance degenerate: a plug-in probability is zero");

    const std::array<double, 4> grad = {
        r1 / (p1 * r0),
        -p0 * r1 / (p1 * p1 * r0),
        -p0 * r1 / (p1 * r0 * r0),
        p0 / (p1 * r0),
    };
    const std::array<std::array<double, 4>, 4> cov = {{
        {p0 * (1 - p0), -p0 * p1, p0 * (1 - r0), -p0 * r1},
        {-p0 * p1, p1 * (1 - p1), -p1 * r0, p1 * (1 - r1)},
        {p0 * (1 - r0), -p1 * r0, r0 * (1 - r0), -r0 * r1},
        {-p0 * r1, p1 * (1 - r1), -r0 * r1, r1 * (1 - r1)},
    }};
    double quad = 0.0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) quad += grad[i] * cov[i][j] * grad[j];
    // the quadratic form is a variance; clamp tiny negative rounding noise
    return std::sqrt(std::max(quad, 0.0));
}

namespace detail {

struct PlugIn {
    double p0, p1, r0, r1;
    double point;
};

inline PlugIn di_plugin(const GroupedCounts& c, DITarget target) {
    if (c.n_total == 0) throw UndefinedMetricError("DI undefined: empty sample");
    const double n = static_cast<double>(c.n_total);
    PlugIn pl{};
    if (target == DITarget::Data) {
        pl.p0 = static_cast<double>(c.n[1][0]) / n;
        pl.p1 = static_cast<double>(c.n[1][1]) / n;
    } else {
        if (!c.has_predictions)
            throw ArgumentError("classifier DI requires prediction counts");
        pl.p0 = static_cast<double>(c.positive_predictions(0)) / n;
        pl.p1 = static_cast<double>(c.positive_predictions(1)) / n;
    }
    pl.r0 = static_cast<double>(c.group_total(0)) / n;
    pl.r1 = static_cast<double>(c.group_total(1)) / n;
    const DIValue di = target == DITarget::Data ? disparate_impact(c)
                                                : disparate_impact_of_predictions(c);
    pl.point = di.value;
    return pl;
}

inline PlugIn rate_ratio_plugin(const GroupedCounts& c, RateKind which) {
    if (!c.has_predictions)
        throw ArgumentError("rate-ratio inference requires prediction counts");
    if (c.n_total == 0) throw UndefinedMetricError("rate ratio undefined: empty sample");
    const double n = static_cast<double>(c.n_total);
    const int y = which == RateKind::TP ? 1 : 0;
    const int g = which == RateKind::TP ? 1 : 0;
    PlugIn pl{};
    pl.p0 = static_cast<double>(c.m[g][y][0]) / n;
    pl.p1 = static_cast<double>(c.m[g][y][1]) / n;
    pl.r0 = static_cast<double>(c.m[0][y][0] + c.m[1][y][0]) / n;
    pl.r1 = static_cast<double>(c.m[0][y][1] + c.m[1][y][1]) / n;
    pl.point = rate_ratio(c, which).value;
    return pl;
}

inline CIEstimate make_delta_ci(const PlugIn& pl, std::size_t n, double level) {
    if (level <= 0.0 || level >= 1.0)
        throw ArgumentError("confidence level must be in (0,1)");
    CIEstimate ci;
    ci.point = pl.point;
    ci.sigma = ratio_of_ratios_sigma(pl.p0, pl.p1, pl.r0, pl.r1);
    ci.n = n;
    ci.level = level;
    ci.method = CIMethod::DeltaMethod;
    const double z = normal_quantile(1.0 - (1.0 - level) / 2.0);
    const double half = ci.sigma / std::sqrt(static_cast<double>(n)) * z;
    ci.lower = ci.point - half;
    ci.upper = ci.point + half;
    return ci;
}

} // namespace detail

inline double di_sigma(const GroupedCounts& c, DITarget target = DITarget::Data) {
    const auto pl = detail::di_plugin(c, target);
    return ratio_of_ratios_sigma(pl.p0, pl.p1, pl.r0, pl.r1);
}

inline CIEstimate di_confidence_interval(const GroupedCounts& c, double level,
                                         DITarget target = DITarget::Data) {
    return detail::make_delta_ci(detail::di_plugin(c, target), c.n_total, level);
}

inline double rate_ratio_sigma(const GroupedCounts& c, RateKind which) {
    const auto pl = detail::rate_ratio_plugin(c, which);
    return ratio_of_ratios_sigma(pl.p0, pl.p1, pl.r0, pl.r1);
}

inline CIEstimate rate_ratio_confidence_interval(const GroupedCounts& c, RateKind which,
                                                 double level) {
    return detail::make_delta_ci(detail::rate_ratio_plugin(c, which), c.n_total, level);
}

// One-sided test of "has Disparate Impact at level beta".
// FairnessEvidence rejects H0: DI <= beta when sqrt(n)(T-beta)/sigma >= z_{1-alpha};
// DiscriminationEvidence rejects H0: DI >= beta when the statistic <= -z_{1-alpha}.
inline TestResult di_level_test(const GroupedCounts& c, double beta, double alpha,
                                TestDirection direction, DITarget target = DITarget::Data) {
    if (beta <= 0.0) throw ArgumentError("di_level_test: beta must be positive");
    if (alpha <= 0.0 || alpha >= 1.0)
        throw ArgumentError("di_level_test: alpha must be in (0,1)");
    const auto pl = detail::di_plugin(c, target);
    const double sigma = ratio_of_ratios_sigma(pl.p0, pl.p1, pl.r0, pl.r1);
    TestResult t;
    t.beta = beta;
    t.alpha = alpha;
    t.direction = direction;
    t.statistic = std::sqrt(static_cast<double>(c.n_total)) * (pl.point - beta) / sigma;
    const double z = normal_quantile(1.0 - alpha);
    if (direction == TestDirection::FairnessEvidence) {
        t.reject = t.statistic >= z;
        t.p_value = 1.0 - normal_cdf(t.statistic);
    } else {
        t.reject = t.statistic <= -z;
        t.p_value = normal_cdf(t.statistic);
    }
    return t;
}

} // namespace fairaudit
