#ifndef BMOO_BOUNDS_HPP
#define BMOO_BOUNDS_HPP

#include <Eigen/Core>

#include <cmath>
#include <stdexcept>
#include <functional>
#include <vector>

#include "bmoo/gp.hpp"
#include "bmoo/problems.hpp"

namespace bmoo {

/// Bounding hyper-rectangles for the objective and constraint spaces.  The
/// origin is kept strictly interior to the constraint box so that feasible
/// and unfeasible regions both have positive volume.
struct BoxBounds {
    Eigen::VectorXd obj_low, obj_upp;
    Eigen::VectorXd cons_low, cons_upp;

    int num_obj() const { return static_cast<int>(obj_low.size()); }
    int num_cons() const { return static_cast<int>(cons_low.size()); }

    double obj_volume() const {
        double v = 1.0;
        for (int i = 0; i < obj_low.size(); ++i) v *= obj_upp[i] - obj_low[i];
        return v;
    }

    double cons_volume() const {
        double v = 1.0;
        for (int j = 0; j < cons_low.size(); ++j) v *= cons_upp[j] - cons_low[j];
        return v;
    }

    /// Volume of the feasible subset of the constraint box.
    double feasible_cons_volume() const {
        double v = 1.0;
        for (int j = 0; j < cons_low.size(); ++j) v *= -cons_low[j];
        return v;
    }
};

using PosteriorFn = std::function<Posterior(const Eigen::VectorXd&)>;

inline std::vector<PosteriorFn> as_predictors(const std::vector<GpModel>& models) {
    std::vector<PosteriorFn> out;
    out.reserve(models.size());
    for (const auto& m : models) {
        out.push_back([&m](const Eigen::VectorXd& x) { return m.predict(x); });
    }
    return out;
}

/// Range estimates from observed values and posterior bands at the candidate
/// points: the corners are min/max over both the evaluations and
/// predictor +- lambda * posterior sd at every candidate.
inline BoxBounds update_bounds(const std::vector<Evaluation>& evals,
                               const std::vector<PosteriorFn>& obj_models,
                               const std::vector<PosteriorFn>& cons_models,
                               const std::vector<Eigen::VectorXd>& candidates, double lambda_obj,
                               double lambda_cons) {
    if (evals.empty()) throw std::invalid_argument("update_bounds: no evaluations");
    if (candidates.empty()) throw std::invalid_argument("update_bounds: no candidates");
    const int p = static_cast<int>(obj_models.size());
    const int q = static_cast<int>(cons_models.size());

    BoxBounds b;
    b.obj_low.resize(p);
    b.obj_upp.resize(p);
    b.cons_low.resize(q);
    b.cons_upp.resize(q);

    for (int i = 0; i < p; ++i) {
        double lo = evals[0].f[i], hi = evals[0].f[i];
        for (const auto& ev : evals) {
            lo = std::min(lo, ev.f[i]);
            hi = std::max(hi, ev.f[i]);
        }
        for (const auto& x : candidates) {
            const Posterior post = obj_models[i](x);
            if (!std::isfinite(post.mean) || !std::isfinite(post.var)) {
                throw std::runtime_error("update_bounds: non-finite objective prediction");
            }
            const double sd = std::sqrt(post.var);
            lo = std::min(lo, post.mean - lambda_obj * sd);
            hi = std::max(hi, post.mean + lambda_obj * sd);
        }
        b.obj_low[i] = lo;
        b.obj_upp[i] = hi;
    }
    for (int j = 0; j < q; ++j) {
        double lo = 0.0, hi = 0.0;  // the origin always belongs to the box
        for (const auto& ev : evals) {
            lo = std::min(lo, ev.c[j]);
            hi = std::max(hi, ev.c[j]);
        }
        for (const auto& x : candidates) {
            const Posterior post = cons_models[j](x);
            if (!std::isfinite(post.mean) || !std::isfinite(post.var)) {
                throw std::runtime_error("update_bounds: non-finite constraint prediction");
            }
            const double sd = std::sqrt(post.var);
            lo = std::min(lo, post.mean - lambda_cons * sd);
            hi = std::max(hi, post.mean + lambda_cons * sd);
        }
        b.cons_low[j] = lo;
        b.cons_upp[j] = hi;
    }

    // keep every box non-degenerate and 0 strictly interior to the
    // constraint box
    for (int i = 0; i < p; ++i) {
        const double span = b.obj_upp[i] - b.obj_low[i];
        const double pad = 1e-6 * (span > 0.0 ? span : 1.0);
        if (span < pad) {
            b.obj_low[i] -= pad;
            b.obj_upp[i] += pad;
        }
    }
    for (int j = 0; j < q; ++j) {
        const double span = b.cons_upp[j] - b.cons_low[j];
        const double pad = 1e-6 * (span > 0.0 ? span : 1.0);
        if (b.cons_low[j] > -pad) b.cons_low[j] = -pad;
        if (b.cons_upp[j] < pad) b.cons_upp[j] = pad;
    }
    return b;
}

/// Volume of the box region dominated by a single unfeasible evaluation with
/// constraint values c1: per coordinate, a satisfied constraint dominates the
/// whole slab while a violated one dominates only beyond its violation.
inline double dominated_box_volume_infeasible(const BoxBounds& bounds,
                                              const Eigen::VectorXd& c1) {
    if (c1.size() == 0 || c1.maxCoeff() <= 0.0) {
        throw std::invalid_argument("dominated_box_volume_infeasible: point is feasible");
    }
    double v = bounds.obj_volume();
    for (int j = 0; j < c1.size(); ++j) {
        if (c1[j] <= 0.0) {
            v *= bounds.cons_upp[j] - bounds.cons_low[j];
        } else {
            v *= std::max(0.0, bounds.cons_upp[j] - c1[j]);
        }
    }
    return v;
}

/// Volume dominated by a single feasible evaluation with objectives f1: the
/// whole unfeasible part of the box plus the dominated objective slab over
/// the feasible part.
inline double dominated_box_volume_feasible(const BoxBounds& bounds, const Eigen::VectorXd& f1) {
    const double neg = bounds.feasible_cons_volume();
    double obj_part = 1.0;
    for (int i = 0; i < f1.size(); ++i) {
        obj_part *= std::max(0.0, bounds.obj_upp[i] - std::max(f1[i], bounds.obj_low[i]));
    }
    return bounds.obj_volume() * (bounds.cons_volume() - neg) + obj_part * neg;
}

}  // namespace bmoo

#endif
