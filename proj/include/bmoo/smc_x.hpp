#ifndef BMOO_SMC_X_HPP
#define BMOO_SMC_X_HPP

#include <Eigen/Core>

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

#include "bmoo/criterion.hpp"
#include "bmoo/rng.hpp"
#include "bmoo/smc_y.hpp"

namespace bmoo {

using BundleProvider = std::function<PosteriorBundle(const Eigen::VectorXd&)>;

/// Target density on the search domain: the plain probability of
/// improvement, or the factorially tilted variant that rewards candidates
/// whose draws satisfy many constraints at once.
enum class DensityTag { plain, factorial_modified };

struct SmcXConfig {
    int mc_draws = 100;          // Gaussian draws per density estimate
    double nu = 0.2;             // ESS fraction that triggers intermediate densities
    int mh_sweeps = 5;
    double target_accept = 0.3;
};

namespace detail {

inline double factorial_value(int k) {
    static const auto table = [] {
        std::array<double, 171> t{};
        t[0] = 1.0;
        for (std::size_t i = 1; i < t.size(); ++i) t[i] = t[i - 1] * static_cast<double>(i);
        return t;
    }();
    return table[static_cast<std::size_t>(std::min(k, 170))];
}

inline std::optional<double> best_feasible_objective(const ExtendedFront& front) {
    std::optional<double> best;
    for (const auto& m : front.points()) {
        if (!m.feasible) continue;
        const double v = m.obj[0];
        if (!best || v < *best) best = v;
    }
    return best;
}

/// Log of the improvement density at one candidate from a fixed block of
/// standard-normal draws.  Draws are clipped to the bounding box before the
/// domination test, so an empty front yields exactly log(1).  The
/// single-objective closed form stays finite arbitrarily deep in the tail,
/// where the plain probability underflows.
inline double log_improvement_density(const PosteriorBundle& bundle,
                                      const Eigen::VectorXd& block, const ExtendedFront& front,
                                      const BoxBounds& bounds, DensityTag tag) {
    const int p = bundle.num_obj();
    const int q = bundle.num_cons();

    if (tag == DensityTag::plain && p == 1) {
        // closed form as soon as the front holds a feasible point
        if (const auto best = best_feasible_objective(front)) {
            const double cap = std::min(*best, bounds.obj_upp[0]);
            double lp = log_prob_below(bundle.obj[0].mean, std::sqrt(bundle.obj[0].var), cap);
            for (int j = 0; j < q; ++j) {
                lp += log_prob_below(bundle.cons[j].mean, std::sqrt(bundle.cons[j].var), 0.0);
            }
            return lp;
        }
    }

    const int n_draws = static_cast<int>(block.size()) / (p + q);
    Eigen::VectorXd f(p), c(q);
    double sum = 0.0;
    for (int i = 0; i < n_draws; ++i) {
        const double* z = block.data() + static_cast<std::ptrdiff_t>(i) * (p + q);
        for (int j = 0; j < p; ++j) {
            const double v = bundle.obj[j].mean + std::sqrt(bundle.obj[j].var) * z[j];
            f[j] = std::clamp(v, bounds.obj_low[j], bounds.obj_upp[j]);
        }
        int satisfied = 0;
        for (int j = 0; j < q; ++j) {
            const double v = bundle.cons[j].mean + std::sqrt(bundle.cons[j].var) * z[p + j];
            c[j] = std::clamp(v, bounds.cons_low[j], bounds.cons_upp[j]);
            if (c[j] <= 0.0) ++satisfied;
        }
        if (!front_dominates_eval(front, f, c)) {
            sum += tag == DensityTag::plain ? 1.0 : factorial_value(satisfied);
        }
    }
    return sum > 0.0 ? std::log(sum / n_draws) : -std::numeric_limits<double>::infinity();
}

inline double improvement_density(const PosteriorBundle& bundle, const Eigen::VectorXd& block,
                                  const ExtendedFront& front, const BoxBounds& bounds,
                                  DensityTag tag) {
    return std::exp(log_improvement_density(bundle, block, front, bounds, tag));
}

}  // namespace detail

/// Probability that the candidate's output lands in the non-dominated
/// region.  Closed form for single-objective states with a feasible
/// incumbent, unbiased Monte Carlo otherwise.
inline double prob_improvement(const PosteriorBundle& bundle, const CriterionState& state,
                               Rng& rng, int n_draws = 100) {
    const int k = bundle.num_obj() + bundle.num_cons();
    Eigen::VectorXd block(static_cast<Eigen::Index>(n_draws) * k);
    for (Eigen::Index i = 0; i < block.size(); ++i) block[i] = rng.normal();
    return detail::improvement_density(bundle, block, state.front, state.bounds,
                                       DensityTag::plain);
}

/// Expectation of K! over draws landing in the non-dominated region, K being
/// the number of satisfied constraints of the draw.
inline double factorial_density_weight(const PosteriorBundle& bundle,
                                       const CriterionState& state, Rng& rng,
                                       int n_draws = 100) {
    const int k = bundle.num_obj() + bundle.num_cons();
    Eigen::VectorXd block(static_cast<Eigen::Index>(n_draws) * k);
    for (Eigen::Index i = 0; i < block.size(); ++i) block[i] = rng.normal();
    return detail::improvement_density(bundle, block, state.front, state.bounds,
                                       DensityTag::factorial_modified);
}

/// Weighted candidate population on the search domain, advanced by
/// reweight / residual-resample / move transitions toward the improvement
/// density of the current posterior.
class ParticleSetX {
public:
    static ParticleSetX init(const Eigen::VectorXd& x_low, const Eigen::VectorXd& x_upp, int m,
                             std::uint64_t seed, DensityTag tag = DensityTag::plain) {
        if (m < 2) throw std::invalid_argument("ParticleSetX: need at least 2 particles");
        ParticleSetX set;
        set.x_low_ = x_low;
        set.x_upp_ = x_upp;
        set.tag_ = tag;
        set.rng_ = Rng::stream(seed, "x-particles");
        set.particles_.resize(m);
        for (auto& x : set.particles_) {
            x.resize(x_low.size());
            for (int i = 0; i < x_low.size(); ++i) x[i] = set.rng_.uniform(x_low[i], x_upp[i]);
        }
        set.weights_ = Eigen::VectorXd::Constant(m, 1.0 / m);
        set.last_density_ = Eigen::VectorXd::Ones(m);
        return set;
    }

    int size() const { return static_cast<int>(particles_.size()); }
    int dim() const { return static_cast<int>(x_low_.size()); }
    const std::vector<Eigen::VectorXd>& particles() const { return particles_; }
    const Eigen::VectorXd& weights() const { return weights_; }
    DensityTag density_tag() const { return tag_; }
    void set_density_tag(DensityTag tag) { tag_ = tag; }

    /// Posterior bundles aligned with the particles, cached by step().
    const std::vector<PosteriorBundle>& bundles() const { return bundles_; }

    double ess() const {
        return 1.0 / weights_.cwiseAbs2().sum();
    }

    /// Importance update of the weights from one density to another; the
    /// particles stay put.
    void reweight(const std::function<double(const Eigen::VectorXd&)>& old_density,
                  const std::function<double(const Eigen::VectorXd&)>& new_density) {
        for (int k = 0; k < size(); ++k) {
            if (weights_[k] <= 0.0) continue;
            const double od = old_density(particles_[k]);
            if (od <= 0.0) {
                throw std::invalid_argument("reweight: old density vanishes on a live particle");
            }
            weights_[k] *= new_density(particles_[k]) / od;
        }
        const double sum = weights_.sum();
        if (sum <= 0.0) throw std::runtime_error("reweight: all weights degenerated to zero");
        weights_ /= sum;
    }

    /// Deterministic floor(m w) copies per particle, remainder multinomial.
    void residual_resample() {
        apply_resample(residual_resample_indices());
    }

    /// Metropolis sweeps with an adaptive anisotropic random-walk proposal
    /// targeting the given (possibly unnormalized) density.
    void move(const std::function<double(const Eigen::VectorXd&)>& target_density, int steps) {
        Eigen::VectorXd d(size());
        for (int k = 0; k < size(); ++k) d[k] = target_density(particles_[k]);
        Eigen::VectorXd proposal(dim());
        for (int s = 0; s < steps; ++s) {
            const Eigen::VectorXd scale = proposal_scales();
            int accepted = 0;
            for (int k = 0; k < size(); ++k) {
                for (int i = 0; i < dim(); ++i) {
                    proposal[i] = particles_[k][i] + scale[i] * rng_.normal();
                }
                if (!inside_domain(proposal)) continue;
                const double dp = target_density(proposal);
                const double ratio = d[k] > 0.0 ? dp / d[k] : (dp > 0.0 ? 2.0 : 0.0);
                if (ratio >= 1.0 || rng_.uniform() < ratio) {
                    particles_[k] = proposal;
                    d[k] = dp;
                    ++accepted;
                }
            }
            adapt_step(static_cast<double>(accepted) / size());
        }
    }

    /// One posterior-update transition: reweight to the new improvement
    /// density, inserting intermediate regions whenever the effective sample
    /// size collapses, then residual-resample and move.  Restarts from the
    /// uniform population when the weights die; if even the restarted path
    /// cannot reach the target region (the posterior may assign it no mass
    /// anywhere), the population settles on the deepest viable level and the
    /// next posterior update tries again.
    void step(const BundleProvider& provider, const CriterionState& old_state,
              const CriterionState& new_state, const SmcXConfig& config) {
        const double keep = config.nu * size();
        refresh_workspace(provider, new_state, config);

        ExtendedFront current = old_state.front;
        bool restarted = false;
        int levels = 0;
        while (true) {
            const Eigen::VectorXd d_target = level_densities(new_state.front, new_state);
            const double target_ess = hypothetical_ess(d_target);
            if (target_ess >= keep ||
                (target_ess > 0.0 && current.same_as(new_state.front))) {
                commit_level(d_target, new_state, new_state.front, provider, config);
                return;
            }
            if (target_ess <= 0.0 && !restarted) {
                restarted = true;
                restart_uniform(provider, new_state, config);
                current = ExtendedFront();
                continue;
            }
            if (++levels > 60) return;  // hold the deepest viable level

            ExtendedFront next = current;
            for (const auto& y : new_state.front.points()) {
                ExtendedFront trial = front_insert(next, y);
                if (!trial.same_as(next) &&
                    hypothetical_ess(level_densities(trial, new_state)) >= keep) {
                    next = trial;
                }
            }
            std::vector<const ExtendedPoint*> remaining;
            for (const auto& y : new_state.front.points()) {
                bool present = false;
                for (const auto& d : next.points()) {
                    if (d.same_as(y)) {
                        present = true;
                        break;
                    }
                }
                if (!present) remaining.push_back(&y);
            }
            if (!remaining.empty() && next.same_as(current)) {
                const ExtendedPoint& star = *remaining[rng_.index(remaining.size())];
                const Eigen::VectorXd obj_upp = new_state.bounds.obj_upp;
                const Eigen::VectorXd cons_upp = new_state.bounds.cons_upp;
                const int q = static_cast<int>(cons_upp.size());
                front_path::FrontPath path;
                if (!star.feasible) {
                    path = front_path::toward_infeasible(next, star, obj_upp, cons_upp);
                } else {
                    // a feasible member makes the density vanish wherever the
                    // posterior sees no feasibility; sweep the violation
                    // planes first when that would starve the population
                    ExtendedPoint anchor0;
                    anchor0.feasible = true;
                    anchor0.obj = obj_upp;
                    anchor0.violation = Eigen::VectorXd::Zero(q);
                    ExtendedFront anchor_front;
                    anchor_front.insert(anchor0);
                    if (q == 0 ||
                        hypothetical_ess(level_densities(anchor_front, new_state)) >= keep) {
                        path = front_path::toward_feasible(next, star, obj_upp, q);
                    } else {
                        path = front_path::sweep_to_feasible(next, obj_upp, cons_upp);
                    }
                }
                const auto measure = [&](const ExtendedFront& f) {
                    return hypothetical_ess(level_densities(f, new_state));
                };
                const auto u = front_path::dichotomy(path, measure, keep, 2.0 * keep);
                if (!u) {
                    if (!restarted) {
                        restarted = true;
                        restart_uniform(provider, new_state, config);
                        current = ExtendedFront();
                        continue;
                    }
                    return;  // no viable transition; hold the current level
                }
                next = path(*u);
            }
            if (next.same_as(current)) return;  // no measurable progress
            const Eigen::VectorXd d_next = level_densities(next, new_state);
            commit_level(d_next, new_state, next, provider, config);
            current = next;
        }
    }

private:
    bool inside_domain(const Eigen::VectorXd& x) const {
        for (int i = 0; i < x.size(); ++i) {
            if (x[i] < x_low_[i] || x[i] > x_upp_[i]) return false;
        }
        return true;
    }

    Eigen::VectorXd proposal_scales() const {
        Eigen::VectorXd mean = Eigen::VectorXd::Zero(dim());
        for (const auto& x : particles_) mean += x;
        mean /= size();
        Eigen::VectorXd var = Eigen::VectorXd::Zero(dim());
        for (const auto& x : particles_) var += (x - mean).cwiseAbs2();
        var /= std::max(1, size() - 1);
        const double factor = std::exp(log_step_);
        Eigen::VectorXd scale(dim());
        for (int i = 0; i < dim(); ++i) {
            scale[i] = factor * std::max(std::sqrt(var[i]), 1e-6 * (x_upp_[i] - x_low_[i]));
        }
        return scale;
    }

    void adapt_step(double acceptance_rate) {
        log_step_ += (acceptance_rate - 0.3) / std::sqrt(static_cast<double>(adapt_count_++));
        log_step_ = std::clamp(log_step_, std::log(1e-4), std::log(2.0));
    }

    Eigen::VectorXd fresh_block(int outputs, int n_draws) {
        Eigen::VectorXd block(static_cast<Eigen::Index>(n_draws) * outputs);
        for (Eigen::Index i = 0; i < block.size(); ++i) block[i] = rng_.normal();
        return block;
    }

    void refresh_workspace(const BundleProvider& provider, const CriterionState& state,
                           const SmcXConfig& config) {
        const int m = size();
        bundles_.resize(m);
        blocks_.resize(m);
        for (int k = 0; k < m; ++k) {
            bundles_[k] = provider(particles_[k]);
            blocks_[k] = fresh_block(bundles_[k].num_obj() + bundles_[k].num_cons(),
                                     config.mc_draws);
        }
    }

    /// Per-particle densities for one front, rescaled by the largest
    /// log-density so that deep-tail targets keep usable relative weights.
    /// Every consumer (weight ratios, effective sample size, Metropolis
    /// ratios) is invariant to the per-front scale.
    Eigen::VectorXd level_densities(const ExtendedFront& front, const CriterionState& state) const {
        Eigen::VectorXd l(size());
        double shift = -std::numeric_limits<double>::infinity();
        for (int k = 0; k < size(); ++k) {
            l[k] = detail::log_improvement_density(bundles_[k], blocks_[k], front, state.bounds,
                                                   tag_);
            shift = std::max(shift, l[k]);
        }
        Eigen::VectorXd d(size());
        if (!std::isfinite(shift)) {
            d.setZero();
            return d;
        }
        for (int k = 0; k < size(); ++k) {
            d[k] = std::isfinite(l[k]) ? std::exp(l[k] - shift) : 0.0;
        }
        return d;
    }

    double hypothetical_ess(const Eigen::VectorXd& d) const {
        double sum = 0.0, sum2 = 0.0;
        for (int k = 0; k < size(); ++k) {
            if (weights_[k] <= 0.0 || last_density_[k] <= 0.0) continue;
            const double w = weights_[k] * d[k] / last_density_[k];
            sum += w;
            sum2 += w * w;
        }
        if (sum <= 0.0) return 0.0;
        return sum * sum / sum2;
    }

    std::vector<int> residual_resample_indices() {
        const int m = size();
        std::vector<int> parents;
        parents.reserve(m);
        Eigen::VectorXd residual(m);
        for (int k = 0; k < m; ++k) {
            const double expected = m * weights_[k];
            const int copies = static_cast<int>(std::floor(expected));
            residual[k] = expected - copies;
            for (int c = 0; c < copies; ++c) parents.push_back(k);
        }
        const double total = residual.sum();
        while (static_cast<int>(parents.size()) < m) {
            double u = rng_.uniform() * total;
            int pick = m - 1;
            for (int k = 0; k < m; ++k) {
                u -= residual[k];
                if (u <= 0.0) {
                    pick = k;
                    break;
                }
            }
            parents.push_back(pick);
        }
        return parents;
    }

    void apply_resample(const std::vector<int>& parents) {
        const int m = size();
        std::vector<Eigen::VectorXd> new_particles(m);
        for (int k = 0; k < m; ++k) new_particles[k] = particles_[parents[k]];
        particles_ = std::move(new_particles);
        if (!bundles_.empty()) {
            std::vector<PosteriorBundle> nb(m);
            std::vector<Eigen::VectorXd> nz(m);
            for (int k = 0; k < m; ++k) {
                nb[k] = bundles_[parents[k]];
                nz[k] = blocks_[parents[k]];
            }
            bundles_ = std::move(nb);
            blocks_ = std::move(nz);
        }
        if (last_density_.size() == m) {
            Eigen::VectorXd nd(m);
            for (int k = 0; k < m; ++k) nd[k] = last_density_[parents[k]];
            last_density_ = nd;
        }
        weights_ = Eigen::VectorXd::Constant(m, 1.0 / m);
    }

    void restart_uniform(const BundleProvider& provider, const CriterionState& state,
                         const SmcXConfig& config) {
        for (auto& x : particles_) {
            for (int i = 0; i < dim(); ++i) x[i] = rng_.uniform(x_low_[i], x_upp_[i]);
        }
        weights_ = Eigen::VectorXd::Constant(size(), 1.0 / size());
        last_density_ = Eigen::VectorXd::Ones(size());
        refresh_workspace(provider, state, config);
    }

    void commit_level(const Eigen::VectorXd& d_level, const CriterionState& state,
                      const ExtendedFront& front, const BundleProvider& provider,
                      const SmcXConfig& config) {
        for (int k = 0; k < size(); ++k) {
            weights_[k] = (weights_[k] > 0.0 && last_density_[k] > 0.0)
                              ? weights_[k] * d_level[k] / last_density_[k]
                              : 0.0;
        }
        const double sum = weights_.sum();
        if (sum <= 0.0) throw std::runtime_error("ParticleSetX: degenerate level weights");
        weights_ /= sum;
        last_density_ = d_level;
        apply_resample(residual_resample_indices());
        pseudo_marginal_move(front, state, provider, config);
    }

    /// Metropolis sweeps whose target is known only through the Monte Carlo
    /// density estimate: each proposal draws a fresh block, and an accepted
    /// proposal carries its estimate along.  Acceptance works on
    /// log-densities so that deep-tail targets remain navigable.
    void pseudo_marginal_move(const ExtendedFront& front, const CriterionState& state,
                              const BundleProvider& provider, const SmcXConfig& config) {
        const double neg_inf = -std::numeric_limits<double>::infinity();
        Eigen::VectorXd ld(size());
        for (int k = 0; k < size(); ++k) {
            ld[k] = detail::log_improvement_density(bundles_[k], blocks_[k], front, state.bounds,
                                                    tag_);
        }
        Eigen::VectorXd proposal(dim());
        for (int s = 0; s < config.mh_sweeps; ++s) {
            const Eigen::VectorXd scale = proposal_scales();
            int accepted = 0;
            for (int k = 0; k < size(); ++k) {
                for (int i = 0; i < dim(); ++i) {
                    proposal[i] = particles_[k][i] + scale[i] * rng_.normal();
                }
                if (!inside_domain(proposal)) continue;
                PosteriorBundle bundle = provider(proposal);
                Eigen::VectorXd block =
                    fresh_block(bundle.num_obj() + bundle.num_cons(), config.mc_draws);
                const double lp =
                    detail::log_improvement_density(bundle, block, front, state.bounds, tag_);
                bool accept = false;
                if (ld[k] == neg_inf) {
                    accept = lp > neg_inf;
                } else if (lp > neg_inf) {
                    const double log_ratio = lp - ld[k];
                    accept = log_ratio >= 0.0 || rng_.uniform() < std::exp(log_ratio);
                }
                if (accept) {
                    particles_[k] = proposal;
                    bundles_[k] = std::move(bundle);
                    blocks_[k] = std::move(block);
                    ld[k] = lp;
                    ++accepted;
                }
            }
            adapt_step(static_cast<double>(accepted) / size());
        }
        // refresh the cached densities on the fresh per-front scale
        double shift = ld.maxCoeff();
        if (!std::isfinite(shift)) shift = 0.0;
        for (int k = 0; k < size(); ++k) {
            last_density_[k] = ld[k] > neg_inf ? std::exp(ld[k] - shift) : 0.0;
        }
    }

    Eigen::VectorXd x_low_, x_upp_;
    std::vector<Eigen::VectorXd> particles_;
    Eigen::VectorXd weights_;
    DensityTag tag_ = DensityTag::plain;
    Rng rng_{0};
    double log_step_ = std::log(0.5);
    int adapt_count_ = 1;

    std::vector<PosteriorBundle> bundles_;
    std::vector<Eigen::VectorXd> blocks_;
    Eigen::VectorXd last_density_;
};

}  // namespace bmoo

#endif
