#pragma once

// Independent oracles used by the unit and acceptance suites. These
// deliberately avoid the library's computation paths: counting is a second
// naive pass, the asymptotic sigma is rebuilt from finite-difference
// gradients and an atom-enumerated covariance, and threshold calibration is
// an exhaustive scan.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <vector>

#include <fairaudit/rng.hpp>

namespace oracles {

// ---- counting and DI by brute force ----------------------------------------

struct BruteCounts {
    std::size_t n[2][2] = {{0, 0}, {0, 0}};
};

inline BruteCounts brute_count(const std::vector<std::uint8_t>& y,
                               const std::vector<std::uint8_t>& s) {
    BruteCounts c;
    for (std::size_t i = 0; i < y.size(); ++i) {
        for (int yy = 0; yy < 2; ++yy)
            for (int ss = 0; ss < 2; ++ss)
                if (y[i] == yy && s[i] == ss) ++c.n[yy][ss];
    }
    return c;
}

// Direct probability-ratio evaluation (same arithmetic shape: one division
// per rate, one quotient).
inline double brute_di(const std::vector<std::uint8_t>& y, const std::vector<std::uint8_t>& s) {
    std::size_t pos0 = 0, tot0 = 0, pos1 = 0, tot1 = 0;
    for (std::size_t i = 0; i < y.size(); ++i) {
        if (s[i] == 0) {
            ++tot0;
            if (y[i] == 1) ++pos0;
        } else {
            ++tot1;
            if (y[i] == 1) ++pos1;
        }
    }
    const double rate0 = static_cast<double>(pos0) / static_cast<double>(tot0);
    const double rate1 = static_cast<double>(pos1) / static_cast<double>(tot1);
    return rate0 / rate1;
}

// ---- numeric delta-method oracle --------------------------------------------

// An atom is one outcome of the underlying categorical variable together with
// the 4-vector Z it induces.
struct Atom {
    double prob;
    std::array<double, 4> z;
};

inline double phi(const std::array<double, 4>& x) { return x[0] * x[3] / (x[1] * x[2]); }

// sigma = sqrt(grad' Cov grad) with the gradient from central finite
// differences and Cov assembled directly as E[ZZ'] - EZ EZ'.
inline double numeric_sigma(const std::vector<Atom>& atoms) {
    std::array<double, 4> mu{};
    std::array<std::array<double, 4>, 4> ezz{};
    for (const auto& a : atoms) {
        for (int i = 0; i < 4; ++i) {
            mu[i] += a.prob * a.z[i];
            for (int j = 0; j < 4; ++j) ezz[i][j] += a.prob * a.z[i] * a.z[j];
        }
    }
    std::array<std::array<double, 4>, 4> cov{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) cov[i][j] = ezz[i][j] - mu[i] * mu[j];

    std::array<double, 4> grad{};
    for (int i = 0; i < 4; ++i) {
        const double h = 1e-6 * std::max(std::abs(mu[i]), 1e-3);
        auto hi = mu, lo = mu;
        hi[i] += h;
        lo[i] -= h;
        grad[i] = (phi(hi) - phi(lo)) / (2.0 * h);
    }
    double quad = 0.0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) quad += grad[i] * cov[i][j] * grad[j];
    return std::sqrt(quad);
}

// DI atoms over cells (g/y, s) with joint probabilities pr[value][group].
inline std::vector<Atom> di_atoms(const std::array<std::array<double, 2>, 2>& pr) {
    std::vector<Atom> atoms;
    for (int v = 0; v < 2; ++v)
        for (int g = 0; g < 2; ++g)
            atoms.push_back({pr[static_cast<std::size_t>(v)][static_cast<std::size_t>(g)],
                             {v == 1 && g == 0 ? 1.0 : 0.0, v == 1 && g == 1 ? 1.0 : 0.0,
                              g == 0 ? 1.0 : 0.0, g == 1 ? 1.0 : 0.0}});
    return atoms;
}

// TP-ratio atoms over the 8 cells (g, y, s).
inline std::vector<Atom> tp_atoms(const std::function<double(int, int, int)>& joint) {
    std::vector<Atom> atoms;
    for (int g = 0; g < 2; ++g)
        for (int y = 0; y < 2; ++y)
            for (int s = 0; s < 2; ++s)
                atoms.push_back({joint(g, y, s),
                                 {g == 1 && y == 1 && s == 0 ? 1.0 : 0.0,
                                  g == 1 && y == 1 && s == 1 ? 1.0 : 0.0,
                                  y == 1 && s == 0 ? 1.0 : 0.0,
                                  y == 1 && s == 1 ? 1.0 : 0.0}});
    return atoms;
}

// ---- Monte-Carlo samplers ----------------------------------------------------

// One multinomial draw over atom probabilities; returns per-atom counts.
inline std::vector<std::size_t> multinomial_draw(const std::vector<double>& probs,
                                                 std::size_t n, fairaudit::Rng& rng) {
    std::vector<double> cum(probs.size());
    double acc = 0.0;
    for (std::size_t k = 0; k < probs.size(); ++k) {
        acc += probs[k];
        cum[k] = acc;
    }
    std::vector<std::size_t> counts(probs.size(), 0);
    for (std::size_t i = 0; i < n; ++i) {
        const double u = rng.next_double() * acc;
        std::size_t k = 0;
        while (k + 1 < cum.size() && u >= cum[k]) ++k;
        ++counts[k];
    }
    return counts;
}

// ---- calibration scan oracle ---------------------------------------------------

// Exhaustive characterization of "largest threshold with training DI >= target"
// under the score >= t rule: DI depends on t only through the group-0 positive
// count, so the optimum is the minimal count c with (c/n0)/rate1 >= target.
// Returns that count, or n0+1 when even c = n0 cannot reach the target.
inline std::size_t min_count_reaching_target(std::size_t n0, double rate1, double target) {
    for (std::size_t c = 0; c <= n0; ++c) {
        const double di = (static_cast<double>(c) / static_cast<double>(n0)) / rate1;
        if (di >= target) return c;
    }
    return n0 + 1;
}

// #{scores >= t} by direct enumeration.
inline std::size_t count_at_threshold(const std::vector<double>& scores, double t) {
    std::size_t c = 0;
    for (double sc : scores) c += sc >= t ? 1u : 0u;
    return c;
}

} // namespace oracles
