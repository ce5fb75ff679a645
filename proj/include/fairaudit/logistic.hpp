#pragma once

// L2-regularized logistic regression trained by damped Newton iterations
// (full batch, deterministic). Continuous features are z-scored with training
// statistics inside the model; the intercept is unpenalized. Training loss is
// recorded per accepted step and is non-increasing by construction of the
// backtracking line search.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "dataset.hpp"
#include "errors.hpp"
#include "scorer.hpp"
#include "stats.hpp"

namespace fairaudit {

struct LRParams {
    double l2_penalty = 1e-4; // lambda in (lambda/2)*||w||^2, intercept excluded
    std::size_t max_epochs = 100;
    double tolerance = 1e-8;  // relative loss-change stopping rule

    void validate() const {
        if (l2_penalty <= 0.0) throw ArgumentError("LRParams: l2_penalty must be positive");
        if (max_epochs == 0) throw ArgumentError("LRParams: max_epochs must be positive");
        if (tolerance <= 0.0) throw ArgumentError("LRParams: tolerance must be positive");
    }
};

namespace detail {

// Cholesky solve of A x = b for symmetric positive definite A (row-major m x m).
// A is overwritten with its factor.
inline std::vector<double> cholesky_solve(std::vector<double>& a, std::vector<double> b,
                                          std::size_t m) {
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            double sum = a[i * m + j];
            for (std::size_t k = 0; k < j; ++k) sum -= a[i * m + k] * a[j * m + k];
            if (i == j) {
                if (sum <= 0.0) throw Error("cholesky: matrix not positive definite");
                a[i * m + i] = std::sqrt(sum);
            } else {
                a[i * m + j] = sum / a[j * m + j];
            }
        }
    }
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t k = 0; k < i; ++k) b[i] -= a[i * m + k] * b[k];
        b[i] /= a[i * m + i];
    }
    for (std::size_t ii = m; ii-- > 0;) {
        for (std::size_t k = ii + 1; k < m; ++k) b[ii] -= a[k * m + ii] * b[k];
        b[ii] /= a[ii * m + ii];
    }
    return b;
}

} // namespace detail

class LogisticModel : public Scorer {
public:
    LogisticModel(std::vector<double> weights, double intercept, std::vector<double> means,
                  std::vector<double> scales, LRParams params, std::vector<double> loss_history,
                  std::vector<std::string> feature_names)
        : weights_(std::move(weights)), intercept_(intercept), means_(std::move(means)),
          scales_(std::move(scales)), params_(params), loss_history_(std::move(loss_history)),
          feature_names_(std::move(feature_names)) {}

    double score(std::span<const double> x) const override {
        if (x.size() != weights_.size())
            throw ArgumentError("LogisticModel: row has wrong dimension");
        double z = intercept_;
        for (std::size_t j = 0; j < weights_.size(); ++j)
            z += weights_[j] * (x[j] - means_[j]) / scales_[j];
        return sigmoid(z);
    }

    std::string family() const override { return "logistic"; }
    const std::vector<double>& weights() const { return weights_; }
    double intercept() const { return intercept_; }
    const std::vector<double>& loss_history() const { return loss_history_; }
    const std::vector<std::string>& feature_names() const { return feature_names_; }

    nlohmann::ordered_json to_json() const override {
        nlohmann::ordered_json j;
        j["schema_version"] = 1;
        j["family"] = family();
        j["params"] = {{"l2_penalty", params_.l2_penalty},
                       {"max_epochs", params_.max_epochs},
                       {"tolerance", params_.tolerance}};
        j["feature_names"] = feature_names_;
        j["weights"] = weights_;
        j["intercept"] = intercept_;
        j["standardizer"] = {{"means", means_}, {"scales", scales_}};
        j["loss_history"] = loss_history_;
        return j;
    }

    static std::shared_ptr<LogisticModel> from_json(const nlohmann::json& j) {
        LRParams p;
        p.l2_penalty = j.at("params").at("l2_penalty").get<double>();
        p.max_epochs = j.at("params").at("max_epochs").get<std::size_t>();
        p.tolerance = j.at("params").at("tolerance").get<double>();
        return std::make_shared<LogisticModel>(
            j.at("weights").get<std::vector<double>>(), j.at("intercept").get<double>(),
            j.at("standardizer").at("means").get<std::vector<double>>(),
            j.at("standardizer").at("scales").get<std::vector<double>>(), p,
            j.value("loss_history", std::vector<double>{}),
            j.at("feature_names").get<std::vector<std::string>>());
    }

private:
    std::vector<double> weights_;
    double intercept_;
    std::vector<double> means_, scales_;
    LRParams params_;
    std::vector<double> loss_history_;
    std::vector<std::string> feature_names_;
};

// The seed parameter is part of the trainer contract but unused: weights start
// at zero and the optimization is full-batch deterministic.
inline std::shared_ptr<LogisticModel> train_logistic(const EncodedDataset& ds,
                                                     const LRParams& params = {},
                                                     std::uint64_t /*seed*/ = 0) {
    params.validate();
    if (ds.n < 2) throw DegenerateTrainingError("logistic regression needs at least 2 rows");
    std::size_t pos = 0;
    for (auto v : ds.y) pos += v;
    if (pos == 0 || pos == ds.n)
        throw DegenerateTrainingError("logistic regression needs both classes present");

    const std::size_t n = ds.n, d = ds.d;

    // z-score continuous features with training statistics
    std::vector<double> means(d, 0.0), scales(d, 1.0);
    for (std::size_t j = 0; j < d; ++j) {
        if (!ds.features[j].is_continuous) continue;
        double m = 0.0;
        for (std::size_t i = 0; i < n; ++i) m += ds.x[i * d + j];
        m /= static_cast<double>(n);
        double ss = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double dv = ds.x[i * d + j] - m;
            ss += dv * dv;
        }
        const double sd = std::sqrt(ss / static_cast<double>(n));
        means[j] = m;
        scales[j] = sd > 0.0 ? sd : 1.0;
    }

    std::vector<double> xs(n * d);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < d; ++j)
            xs[i * d + j] = (ds.x[i * d + j] - means[j]) / scales[j];

    const std::size_t m = d + 1; // weights + intercept (last)
    std::vector<double> theta(m, 0.0);
    std::vector<double> z(n), p(n);

    auto loss_at = [&](const std::vector<double>& th) {
        double loss = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            double zi = th[d];
            const double* xr = xs.data() + i * d;
            for (std::size_t j = 0; j < d; ++j) zi += th[j] * xr[j];
            const double margin = ds.y[i] ? zi : -zi;
            loss += log1p_exp_neg(margin);
        }
        loss /= static_cast<double>(n);
        double reg = 0.0;
        for (std::size_t j = 0; j < d; ++j) reg += th[j] * th[j];
        return loss + 0.5 * params.l2_penalty * reg;
    };

    std::vector<double> loss_history;
    double loss = loss_at(theta);
    loss_history.push_back(loss);

    std::vector<double> grad(m), hess(m * m), trial(m);
    for (std::size_t epoch = 0; epoch < params.max_epochs; ++epoch) {
        for (std::size_t i = 0; i < n; ++i) {
            double zi = theta[d];
            const double* xr = xs.data() + i * d;
            for (std::size_t j = 0; j < d; ++j) zi += theta[j] * xr[j];
            z[i] = zi;
            p[i] = sigmoid(zi);
        }
        std::fill(grad.begin(), grad.end(), 0.0);
        std::fill(hess.begin(), hess.end(), 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            const double r = p[i] - static_cast<double>(ds.y[i]);
            const double w = std::max(p[i] * (1.0 - p[i]), 1e-12);
            const double* xr = xs.data() + i * d;
            for (std::size_t j = 0; j < d; ++j) grad[j] += r * xr[j];
            grad[d] += r;
            for (std::size_t j = 0; j < d; ++j) {
                const double wj = w * xr[j];
                for (std::size_t k = 0; k <= j; ++k) hess[j * m + k] += wj * xr[k];
                hess[j * m + d] += wj;
            }
            hess[d * m + d] += w;
        }
        const double inv_n = 1.0 / static_cast<double>(n);
        for (std::size_t j = 0; j < m; ++j) grad[j] *= inv_n;
        for (std::size_t j = 0; j < m; ++j)
            for (std::size_t k = 0; k <= j; ++k) hess[j * m + k] *= inv_n;
        for (std::size_t j = 0; j < d; ++j) {
            grad[j] += params.l2_penalty * theta[j];
            hess[j * m + j] += params.l2_penalty;
        }
        for (std::size_t j = 0; j < m; ++j)
            for (std::size_t k = j + 1; k < m; ++k) hess[j * m + k] = hess[k * m + j];

        std::vector<double> hcopy = hess;
        std::vector<double> step = detail::cholesky_solve(hcopy, grad, m);

        // backtracking: accept only non-increasing loss
        double t = 1.0;
        double new_loss = loss;
        bool accepted = false;
        for (int halving = 0; halving < 40; ++halving) {
            for (std::size_t j = 0; j < m; ++j) trial[j] = theta[j] - t * step[j];
            new_loss = loss_at(trial);
            if (new_loss <= loss) {
                accepted = true;
                break;
            }
            t *= 0.5;
        }
        if (!accepted) break; // numerically at the optimum
        theta = trial;
        loss_history.push_back(new_loss);
        const bool converged = std::abs(loss - new_loss) <= params.tolerance * std::max(1.0, std::abs(loss));
        loss = new_loss;
        if (converged) break;
    }

    std::vector<double> weights(theta.begin(), theta.begin() + static_cast<std::ptrdiff_t>(d));
    return std::make_shared<LogisticModel>(std::move(weights), theta[d], std::move(means),
                                           std::move(scales), params, std::move(loss_history),
                                           ds.feature_names());
}

} // namespace fairaudit
