#ifndef BMOO_CRITERION_HPP
#define BMOO_CRITERION_HPP

#include <Eigen/Core>

#include <cmath>
#include <memory>
#include <optional>
#include <stdexcept>
#include <vector>

#include "bmoo/bounds.hpp"
#include "bmoo/domination.hpp"
#include "bmoo/gp.hpp"
#include "bmoo/math.hpp"
#include "bmoo/smc_y.hpp"

namespace bmoo {

/// Posterior marginals of all outputs at one candidate input.
struct PosteriorBundle {
    std::vector<Posterior> obj;
    std::vector<Posterior> cons;

    int num_obj() const { return static_cast<int>(obj.size()); }
    int num_cons() const { return static_cast<int>(cons.size()); }

    bool deterministic() const {
        for (const auto& p : obj) {
            if (p.var > 0.0) return false;
        }
        for (const auto& p : cons) {
            if (p.var > 0.0) return false;
        }
        return true;
    }
};

/// Everything the sampling criterion needs besides the candidate posterior:
/// the non-dominated set of evaluations, the bounding boxes, and (when the
/// integral cannot be done in closed form) a particle population on the
/// relevant output region.
struct CriterionState {
    ExtendedFront front;
    BoxBounds bounds;
    std::optional<double> best_feasible_value;  // single-objective incumbent
    bool feasible_found = false;
    std::shared_ptr<const ParticleSetY> y_particles;
};

/// Front restricted to the constraint space: clipped violation vectors of
/// the members (all-zero for feasible members).
inline ExtendedFront violation_front(const ExtendedFront& front) {
    ExtendedFront out;
    for (const auto& m : front.points()) {
        ExtendedPoint c;
        c.obj = Eigen::VectorXd();
        c.violation = m.violation;
        c.feasible = m.feasible;
        out.insert(c);
    }
    return out;
}

/// Front restricted to the objective space, using feasible members only.
inline ExtendedFront feasible_objective_front(const ExtendedFront& front) {
    ExtendedFront out;
    for (const auto& m : front.points()) {
        if (!m.feasible) continue;
        ExtendedPoint o;
        o.obj = m.obj;
        o.violation = Eigen::VectorXd();
        o.feasible = true;
        out.insert(o);
    }
    return out;
}

/// Classical expected improvement below the incumbent value.
inline double ei_classic(const Posterior& post, double best) {
    return ei_kernel(best - post.mean, post.var);
}

/// Probability that all constraint outputs are nonpositive; zero-variance
/// marginals contribute exact indicators.
inline double prob_feasible(const std::vector<Posterior>& cons) {
    double p = 1.0;
    for (const auto& c : cons) p *= prob_below(c.mean, std::sqrt(c.var), 0.0);
    return p;
}

/// Product criterion: probability of feasibility times the unconstrained
/// expected improvement with respect to the best feasible value.
inline double ei_schonlau(const PosteriorBundle& bundle, double best) {
    if (bundle.num_obj() != 1) {
        throw std::logic_error("ei_schonlau: single-objective criterion");
    }
    return prob_feasible(bundle.cons) * ei_classic(bundle.obj[0], best);
}

inline double prob_obj_below(const std::vector<Posterior>& obj, const Eigen::VectorXd& y) {
    double p = 1.0;
    for (std::size_t i = 0; i < obj.size(); ++i) {
        p *= prob_below(obj[i].mean, std::sqrt(obj[i].var), y[static_cast<Eigen::Index>(i)]);
    }
    return p;
}

inline double prob_violation_below(const std::vector<Posterior>& cons, const Eigen::VectorXd& v) {
    double p = 1.0;
    for (std::size_t j = 0; j < cons.size(); ++j) {
        p *= prob_below(cons[j].mean, std::sqrt(cons[j].var),
                        std::max(v[static_cast<Eigen::Index>(j)], 0.0));
    }
    return p;
}

/// Probability that the candidate's output dominates the box point
/// represented by `probe` under the extended rule.  Independent Gaussian
/// marginals give a product of normal cdfs on either the objective block (a
/// feasible probe, which also needs feasibility of the candidate) or the
/// clipped violation block (an unfeasible probe).
inline double prob_dominates(const PosteriorBundle& bundle, const ExtendedPoint& probe) {
    if (bundle.deterministic()) {
        ExtendedPoint point;
        point.obj.resize(bundle.num_obj());
        for (int i = 0; i < bundle.num_obj(); ++i) point.obj[i] = bundle.obj[i].mean;
        Eigen::VectorXd cons(bundle.num_cons());
        for (int j = 0; j < bundle.num_cons(); ++j) cons[j] = bundle.cons[j].mean;
        point.violation = cons.cwiseMax(0.0);
        point.feasible = bundle.num_cons() == 0 || cons.maxCoeff() <= 0.0;
        return extended_dominates(point, probe) ? 1.0 : 0.0;
    }
    if (probe.feasible) {
        return prob_obj_below(bundle.obj, probe.obj) * prob_feasible(bundle.cons);
    }
    return prob_violation_below(bundle.cons, probe.violation);
}

inline double prob_dominates(const PosteriorBundle& bundle, const Eigen::VectorXd& y_obj,
                             const Eigen::VectorXd& y_cons) {
    return prob_dominates(bundle, extend_point(y_obj, y_cons));
}

namespace detail {

inline const ParticleSetY& require_particles(const CriterionState& state, YSpace space,
                                             const char* who) {
    if (!state.y_particles || state.y_particles->box().space != space) {
        throw std::logic_error(std::string(who) + ": particle population missing or on the wrong space");
    }
    return *state.y_particles;
}

}  // namespace detail

/// Contribution of the feasible part of the box: the feasible-constraint
/// volume times the probability of feasibility times the objective-space
/// integral of the domination probability.  The integral has a closed form
/// while no feasible point exists (the dominated objective set is empty);
/// afterwards it is estimated on the objective-space particle population.
inline double ei_feasible_part(const PosteriorBundle& bundle, const CriterionState& state) {
    const BoxBounds& b = state.bounds;
    const double pf = prob_feasible(bundle.cons);
    if (pf <= 0.0) return 0.0;
    double obj_integral = 0.0;
    if (!state.feasible_found) {
        obj_integral = 1.0;
        for (int i = 0; i < bundle.num_obj(); ++i) {
            const double mean = bundle.obj[i].mean;
            const double var = bundle.obj[i].var;
            obj_integral *=
                ei_kernel(b.obj_upp[i] - mean, var) - ei_kernel(b.obj_low[i] - mean, var);
        }
        obj_integral = std::max(0.0, obj_integral);
    } else {
        const ParticleSetY& yp =
            detail::require_particles(state, YSpace::objective, "ei_feasible_part");
        obj_integral = estimate_ei_integral(
            yp, [&](const Eigen::VectorXd& y) { return prob_obj_below(bundle.obj, y); },
            yp.region_volume());
    }
    return b.feasible_cons_volume() * pf * obj_integral;
}

/// Contribution of the unfeasible part of the box, estimated on the
/// constraint-space particle population.  Identically zero once a feasible
/// point has been evaluated (its violation vector dominates the whole
/// unfeasible region).
inline double ei_unfeasible_part(const PosteriorBundle& bundle, const CriterionState& state) {
    if (bundle.num_cons() == 0 || state.feasible_found) return 0.0;
    const ParticleSetY& yp =
        detail::require_particles(state, YSpace::constraint, "ei_unfeasible_part");
    const double integral = estimate_ei_integral(
        yp,
        [&](const Eigen::VectorXd& y) {
            if (y.maxCoeff() <= 0.0) return 0.0;  // feasible slice belongs to the other term
            return prob_violation_below(bundle.cons, y);
        },
        yp.region_volume());
    return state.bounds.obj_volume() * integral;
}

/// log of the exact single-objective criterion value; stays finite deep in
/// the tail where the plain value underflows, so candidates remain
/// comparable during late refinement.
inline double log_expected_improvement_exact(const PosteriorBundle& bundle,
                                             const CriterionState& state) {
    if (!state.best_feasible_value || bundle.num_obj() != 1) {
        throw std::logic_error("log_expected_improvement_exact: needs a feasible incumbent");
    }
    const double cap = std::min(*state.best_feasible_value, state.bounds.obj_upp[0]);
    double l = std::log(state.bounds.feasible_cons_volume());
    for (const auto& c : bundle.cons) l += log_prob_below(c.mean, std::sqrt(c.var), 0.0);
    return l + log_ei_kernel(cap - bundle.obj[0].mean, bundle.obj[0].var);
}

/// Expected gain of dominated box volume from evaluating the candidate.
/// Single-objective states with a feasible incumbent dispatch to the exact
/// product form (argmax-equivalent to the particle estimate and cheaper).
inline double expected_improvement(const PosteriorBundle& bundle, const CriterionState& state,
                                   bool exact_single_objective = true) {
    if (bundle.num_obj() != state.bounds.num_obj() ||
        bundle.num_cons() != state.bounds.num_cons()) {
        throw std::logic_error("expected_improvement: bundle does not match the state");
    }
    if (exact_single_objective && state.feasible_found && bundle.num_obj() == 1) {
        if (!state.best_feasible_value) {
            throw std::logic_error("expected_improvement: missing best feasible value");
        }
        const double cap = std::min(*state.best_feasible_value, state.bounds.obj_upp[0]);
        return state.bounds.feasible_cons_volume() * prob_feasible(bundle.cons) *
               ei_kernel(cap - bundle.obj[0].mean, bundle.obj[0].var);
    }
    return ei_feasible_part(bundle, state) + ei_unfeasible_part(bundle, state);
}

}  // namespace bmoo

#endif
