#ifndef BMOO_GP_HPP
#define BMOO_GP_HPP

#include <Eigen/Cholesky>
#include <Eigen/Core>

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

#include "bmoo/rng.hpp"

namespace bmoo {

struct GpHyperparameters {
    double sigma2 = 1.0;       // process variance
    Eigen::VectorXd theta;     // per-dimension range parameters
    double nugget_rel = 1e-10;  // conditioning jitter relative to sigma2
};

struct Posterior {
    double mean = 0.0;
    double var = 0.0;
};

/// Matern 5/2 correlation at scaled distance r >= 0.
inline double matern52(double r) {
    const double a = 2.2360679774997896964091736687747 * r;  // sqrt(5) r
    return (1.0 + a + a * a / 3.0) * std::exp(-a);
}

struct GpConfig {
    Eigen::VectorXd x_low, x_upp;  // domain used for input normalization
    int num_starts = 5;
    int max_evals_per_start = 0;   // 0 -> 60 * (dim + 1)
    double theta_log10_sd = 1.0;   // prior deviation, log10 of normalized range
    double sigma2_log10_sd = 1.0;  // weak prior around the empirical variance
    double theta_min = 1e-3, theta_max = 1e3;
    double nugget_rel = 1e-10, nugget_rel_max = 1e-2;
    std::optional<GpHyperparameters> warm_start;  // normalized-space values
    std::uint64_t seed = 0;
};

/// Gaussian process interpolator with a constant unknown mean.  Inputs are
/// normalized to the unit box and outputs standardized internally; fitted
/// models are immutable and predict() is safe to call concurrently.
class GpModel {
public:
    Posterior predict(const Eigen::VectorXd& x) const {
        Posterior out;
        if (degenerate_) {
            out.mean = y_mean_;
            out.var = tiny_var_;
            return out;
        }
        const int n = static_cast<int>(train_x_.rows());
        Eigen::VectorXd xn = (x - x_low_).cwiseQuotient(x_span_);
        Eigen::VectorXd k(n);
        for (int i = 0; i < n; ++i) {
            double h2 = 0.0;
            for (int l = 0; l < xn.size(); ++l) {
                const double dl = (xn[l] - train_x_(i, l)) / hyper_.theta[l];
                h2 += dl * dl;
            }
            k[i] = hyper_.sigma2 * matern52(std::sqrt(h2));
        }
        const double mean_std = beta_ + k.dot(alpha_);
        const Eigen::VectorXd u = llt_.solve(k);
        const double one_kinv_k = weights_ones_.dot(k);
        double var_std = hyper_.sigma2 - k.dot(u);
        var_std += (1.0 - one_kinv_k) * (1.0 - one_kinv_k) / ones_kinv_ones_;
        out.mean = y_mean_ + y_scale_ * mean_std;
        out.var = std::max(0.0, var_std) * y_scale_ * y_scale_;
        return out;
    }

    const GpHyperparameters& hyper() const { return hyper_; }
    double mean_coefficient() const { return y_mean_ + y_scale_ * beta_; }
    /// Process variance in output units.
    double process_variance() const { return hyper_.sigma2 * y_scale_ * y_scale_; }
    bool degenerate() const { return degenerate_; }
    const Eigen::MatrixXd& train_x_normalized() const { return train_x_; }

private:
    friend GpModel fit_map(const Eigen::MatrixXd&, const Eigen::VectorXd&, const GpConfig&);

    GpHyperparameters hyper_;       // normalized/standardized units
    Eigen::VectorXd x_low_, x_span_;
    double y_mean_ = 0.0, y_scale_ = 1.0;
    Eigen::MatrixXd train_x_;       // normalized
    Eigen::LLT<Eigen::MatrixXd> llt_;
    Eigen::VectorXd alpha_;         // K^{-1} (y - beta 1)
    Eigen::VectorXd weights_ones_;  // K^{-1} 1, scaled by sigma2 for dot with k
    double ones_kinv_ones_ = 1.0;
    double beta_ = 0.0;
    bool degenerate_ = false;
    double tiny_var_ = 0.0;
};

namespace detail {

/// Pairwise squared coordinate differences, cached so that the correlation
/// matrix can be rebuilt cheaply for each hyperparameter trial.
struct PairDiffs {
    int n = 0, d = 0;
    std::vector<double> sq;  // packed lower triangle, per dimension

    explicit PairDiffs(const Eigen::MatrixXd& x)
        : n(static_cast<int>(x.rows())), d(static_cast<int>(x.cols())) {
        sq.resize(static_cast<std::size_t>(n) * (n - 1) / 2 * d);
        std::size_t idx = 0;
        for (int i = 1; i < n; ++i) {
            for (int j = 0; j < i; ++j) {
                for (int l = 0; l < d; ++l) {
                    const double diff = x(i, l) - x(j, l);
                    sq[idx++] = diff * diff;
                }
            }
        }
    }

    void fill_correlation(const Eigen::VectorXd& theta, double nugget, Eigen::MatrixXd& m) const {
        m.resize(n, n);
        Eigen::VectorXd inv2(d);
        for (int l = 0; l < d; ++l) inv2[l] = 1.0 / (theta[l] * theta[l]);
        std::size_t idx = 0;
        for (int i = 0; i < n; ++i) m(i, i) = 1.0 + nugget;
        for (int i = 1; i < n; ++i) {
            for (int j = 0; j < i; ++j) {
                double h2 = 0.0;
                for (int l = 0; l < d; ++l) h2 += sq[idx++] * inv2[l];
                const double v = matern52(std::sqrt(h2));
                m(i, j) = v;
                m(j, i) = v;
            }
        }
    }
};

struct LikelihoodParts {
    bool ok = false;
    double log_det = 0.0;
    double beta = 0.0;
    double quad = 0.0;  // (y - beta 1)' M^{-1} (y - beta 1)
};

inline LikelihoodParts correlation_likelihood(const PairDiffs& diffs, const Eigen::VectorXd& y,
                                              const Eigen::VectorXd& theta, double nugget,
                                              Eigen::MatrixXd& scratch) {
    LikelihoodParts parts;
    diffs.fill_correlation(theta, nugget, scratch);
    Eigen::LLT<Eigen::Ref<Eigen::MatrixXd>> llt(scratch);  // in-place
    if (llt.info() != Eigen::Success) return parts;
    const int n = diffs.n;
    parts.log_det = 0.0;
    for (int i = 0; i < n; ++i) parts.log_det += 2.0 * std::log(scratch(i, i));
    const Eigen::VectorXd ones = Eigen::VectorXd::Ones(n);
    const Eigen::VectorXd w = llt.solve(ones);
    const double denom = ones.dot(w);
    if (denom <= 0.0) return parts;
    parts.beta = y.dot(w) / denom;
    const Eigen::VectorXd resid = y - parts.beta * ones;
    parts.quad = resid.dot(llt.solve(resid));
    parts.ok = parts.quad >= 0.0 && std::isfinite(parts.quad);
    return parts;
}

/// Nelder-Mead on a bounded objective; returns the best point found.
inline Eigen::VectorXd nelder_mead(const std::function<double(const Eigen::VectorXd&)>& fn,
                                   const Eigen::VectorXd& start, double step, int max_evals,
                                   double* best_value) {
    const int k = static_cast<int>(start.size());
    std::vector<Eigen::VectorXd> pts(k + 1, start);
    std::vector<double> vals(k + 1);
    int evals = 0;
    for (int i = 1; i <= k; ++i) pts[i][i - 1] += step;
    for (int i = 0; i <= k; ++i) vals[i] = (++evals, fn(pts[i]));

    auto order = [&]() {
        for (int i = 1; i <= k; ++i) {
            for (int j = i; j > 0 && vals[j] < vals[j - 1]; --j) {
                std::swap(vals[j], vals[j - 1]);
                std::swap(pts[j], pts[j - 1]);
            }
        }
    };
    order();

    while (evals < max_evals) {
        Eigen::VectorXd centroid = Eigen::VectorXd::Zero(k);
        for (int i = 0; i < k; ++i) centroid += pts[i];
        centroid /= k;

        const Eigen::VectorXd refl = centroid + (centroid - pts[k]);
        const double f_refl = (++evals, fn(refl));
        if (f_refl < vals[0]) {
            const Eigen::VectorXd expa = centroid + 2.0 * (centroid - pts[k]);
            const double f_expa = (++evals, fn(expa));
            if (f_expa < f_refl) {
                pts[k] = expa;
                vals[k] = f_expa;
            } else {
                pts[k] = refl;
                vals[k] = f_refl;
            }
        } else if (f_refl < vals[k - 1]) {
            pts[k] = refl;
            vals[k] = f_refl;
        } else {
            const Eigen::VectorXd contr = centroid + 0.5 * (pts[k] - centroid);
            const double f_contr = (++evals, fn(contr));
            if (f_contr < vals[k]) {
                pts[k] = contr;
                vals[k] = f_contr;
            } else {
                for (int i = 1; i <= k; ++i) {
                    pts[i] = pts[0] + 0.5 * (pts[i] - pts[0]);
                    vals[i] = (++evals, fn(pts[i]));
                }
            }
        }
        order();
        if (vals[k] - vals[0] < 1e-9 * (1.0 + std::abs(vals[0]))) break;
    }
    if (best_value) *best_value = vals[0];
    return pts[0];
}

}  // namespace detail

/// Fit hyperparameters by maximizing the posterior density (marginal
/// likelihood plus independent log-normal priors on the ranges and the
/// process variance) with multi-start local search over log-parameters.
inline GpModel fit_map(const Eigen::MatrixXd& train_x, const Eigen::VectorXd& train_y,
                       const GpConfig& config) {
    const int n = static_cast<int>(train_x.rows());
    const int d = static_cast<int>(train_x.cols());
    if (n < 2) throw std::invalid_argument("fit_map: need at least 2 observations");
    if (train_y.size() != n) throw std::invalid_argument("fit_map: size mismatch");
    if (!train_y.allFinite()) throw std::invalid_argument("fit_map: non-finite observations");

    GpModel model;
    model.x_low_ = config.x_low.size() == d ? config.x_low
                                            : Eigen::VectorXd(train_x.colwise().minCoeff());
    Eigen::VectorXd x_high = config.x_upp.size() == d ? config.x_upp
                                                      : Eigen::VectorXd(train_x.colwise().maxCoeff());
    model.x_span_ = (x_high - model.x_low_).cwiseMax(1e-12);
    model.train_x_ = (train_x.rowwise() - model.x_low_.transpose()).array().rowwise() /
                     model.x_span_.transpose().array();

    model.y_mean_ = train_y.mean();
    const double y_sd = std::sqrt((train_y.array() - model.y_mean_).square().sum() /
                                  std::max(1, n - 1));
    if (y_sd <= 1e-12 * std::max(1.0, std::abs(model.y_mean_))) {
        // constant observations: flat predictor with vanishing variance
        model.degenerate_ = true;
        model.y_scale_ = 1.0;
        model.tiny_var_ = 1e-12 * std::max(1.0, model.y_mean_ * model.y_mean_);
        model.hyper_.sigma2 = model.tiny_var_;
        model.hyper_.theta = Eigen::VectorXd::Ones(d);
        model.hyper_.nugget_rel = config.nugget_rel;
        return model;
    }
    model.y_scale_ = y_sd;
    const Eigen::VectorXd y = (train_y.array() - model.y_mean_) / y_sd;

    const detail::PairDiffs diffs(model.train_x_);
    Eigen::MatrixXd scratch(n, n);
    const double log10_theta_min = std::log10(config.theta_min);
    const double log10_theta_max = std::log10(config.theta_max);

    // params: (log10 theta_1..d, log10 sigma2)
    auto neg_log_posterior = [&](const Eigen::VectorXd& params) -> double {
        Eigen::VectorXd theta(d);
        for (int l = 0; l < d; ++l) {
            if (params[l] < log10_theta_min || params[l] > log10_theta_max) return 1e30;
            theta[l] = std::pow(10.0, params[l]);
        }
        const double log10_s2 = params[d];
        if (log10_s2 < -8.0 || log10_s2 > 8.0) return 1e30;
        const double sigma2 = std::pow(10.0, log10_s2);
        const auto parts = detail::correlation_likelihood(diffs, y, theta, config.nugget_rel,
                                                          scratch);
        if (!parts.ok) return 1e30;
        double nll = 0.5 * (n * std::log(sigma2) + parts.log_det + parts.quad / sigma2);
        for (int l = 0; l < d; ++l) {
            const double z = params[l] / config.theta_log10_sd;
            nll += 0.5 * z * z;
        }
        const double zs = log10_s2 / config.sigma2_log10_sd;  // centered at var(y) = 1
        nll += 0.5 * zs * zs;
        return nll;
    };

    Rng rng = Rng::stream(config.seed, "gp-fit-starts");
    std::vector<Eigen::VectorXd> starts;
    if (config.warm_start && config.warm_start->theta.size() == d) {
        Eigen::VectorXd s(d + 1);
        for (int l = 0; l < d; ++l) {
            s[l] = std::clamp(std::log10(config.warm_start->theta[l]), log10_theta_min,
                              log10_theta_max);
        }
        s[d] = std::clamp(std::log10(config.warm_start->sigma2), -8.0, 8.0);
        starts.push_back(s);
    }
    {
        Eigen::VectorXd s = Eigen::VectorXd::Zero(d + 1);
        starts.push_back(s);  // prior center
        s.head(d).setConstant(-0.7);
        starts.push_back(s);
    }
    while (static_cast<int>(starts.size()) < config.num_starts) {
        Eigen::VectorXd s(d + 1);
        for (int l = 0; l < d; ++l) s[l] = rng.uniform(-1.3, 0.3);
        s[d] = rng.uniform(-0.5, 0.5);
        starts.push_back(s);
    }
    if (static_cast<int>(starts.size()) > config.num_starts) {
        starts.resize(config.num_starts);
    }

    const int max_evals = config.max_evals_per_start > 0 ? config.max_evals_per_start
                                                         : 60 * (d + 1);
    Eigen::VectorXd best_params;
    double best_value = 1e31;
    for (const auto& s : starts) {
        double value = 0.0;
        Eigen::VectorXd p = detail::nelder_mead(neg_log_posterior, s, 0.25, max_evals, &value);
        if (value < best_value) {
            best_value = value;
            best_params = p;
        }
    }
    if (best_value >= 1e30) throw std::runtime_error("fit_map: posterior optimization failed");

    model.hyper_.theta.resize(d);
    for (int l = 0; l < d; ++l) model.hyper_.theta[l] = std::pow(10.0, best_params[l]);
    model.hyper_.sigma2 = std::pow(10.0, best_params[d]);

    // final factorization, escalating the nugget if conditioning demands it
    double nugget = config.nugget_rel;
    while (true) {
        diffs.fill_correlation(model.hyper_.theta, nugget, scratch);
        scratch *= model.hyper_.sigma2;
        model.llt_.compute(scratch);
        if (model.llt_.info() == Eigen::Success) break;
        nugget *= 10.0;
        if (nugget > config.nugget_rel_max) {
            throw std::runtime_error("fit_map: covariance factorization failed");
        }
    }
    model.hyper_.nugget_rel = nugget;

    const Eigen::VectorXd ones = Eigen::VectorXd::Ones(n);
    model.weights_ones_ = model.llt_.solve(ones);
    model.ones_kinv_ones_ = ones.dot(model.weights_ones_);
    model.beta_ = y.dot(model.weights_ones_) / model.ones_kinv_ones_;
    model.alpha_ = model.llt_.solve(y - model.beta_ * ones);
    return model;
}

}  // namespace bmoo

#endif
