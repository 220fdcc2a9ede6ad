#ifndef BMOO_SMC_Y_HPP
#define BMOO_SMC_Y_HPP

#include <Eigen/Core>

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

#include "bmoo/bounds.hpp"
#include "bmoo/domination.hpp"
#include "bmoo/rng.hpp"

namespace bmoo {

/// Which block of output coordinates a particle population lives on.  The
/// improvement integral factorizes over independent outputs, so populations
/// are kept on the constraint box before a feasible point is known and on
/// the objective box afterwards; the full product box is used when no
/// factorization applies.
enum class YSpace { full, objective, constraint };

struct YBox {
    YSpace space = YSpace::full;
    int p = 0, q = 0;  // extended-point split of the coordinates
    Eigen::VectorXd low, upp;

    static YBox full(const BoxBounds& b) {
        YBox box;
        box.space = YSpace::full;
        box.p = b.num_obj();
        box.q = b.num_cons();
        box.low.resize(box.p + box.q);
        box.upp.resize(box.p + box.q);
        box.low << b.obj_low, b.cons_low;
        box.upp << b.obj_upp, b.cons_upp;
        return box;
    }

    static YBox objective(const BoxBounds& b) {
        YBox box;
        box.space = YSpace::objective;
        box.p = b.num_obj();
        box.q = 0;
        box.low = b.obj_low;
        box.upp = b.obj_upp;
        return box;
    }

    static YBox constraint(const BoxBounds& b) {
        YBox box;
        box.space = YSpace::constraint;
        box.p = 0;
        box.q = b.num_cons();
        box.low = b.cons_low;
        box.upp = b.cons_upp;
        return box;
    }

    int dim() const { return static_cast<int>(low.size()); }

    double volume() const {
        double v = 1.0;
        for (int i = 0; i < low.size(); ++i) v *= upp[i] - low[i];
        return v;
    }

    bool contains(const Eigen::VectorXd& y) const {
        for (int i = 0; i < low.size(); ++i) {
            if (y[i] < low[i] || y[i] > upp[i]) return false;
        }
        return true;
    }

    Eigen::VectorXd obj_upper() const {
        if (space == YSpace::constraint) return Eigen::VectorXd();
        return space == YSpace::objective ? upp : Eigen::VectorXd(upp.head(p));
    }

    Eigen::VectorXd cons_upper() const {
        if (space == YSpace::objective) return Eigen::VectorXd();
        return space == YSpace::constraint ? upp : Eigen::VectorXd(upp.tail(q));
    }

    /// Extended image of a box point, for domination tests.
    ExtendedPoint probe(const Eigen::VectorXd& y) const {
        switch (space) {
            case YSpace::objective:
                return extend_point(y, Eigen::VectorXd());
            case YSpace::constraint:
                return extend_point(Eigen::VectorXd(), y);
            case YSpace::full:
            default:
                return extend_point(y.head(p), y.tail(q));
        }
    }
};

/// Continuous front transitions used to insert intermediate regions between
/// two nested non-dominated sets.  A path maps u in [0, 1] to a front that
/// interpolates between a harmless edge anchor (u = 0) and the blocking
/// target point (u = 1).
namespace front_path {

using FrontPath = std::function<ExtendedFront(double)>;

/// Unfeasible target: anchor on the box edge with the violated coordinates
/// at their maxima and the satisfied ones at zero.
inline FrontPath toward_infeasible(const ExtendedFront& base, const ExtendedPoint& star,
                                   const Eigen::VectorXd& obj_upp,
                                   const Eigen::VectorXd& cons_upp) {
    Eigen::VectorXd anchor(cons_upp.size());
    for (int j = 0; j < cons_upp.size(); ++j) {
        anchor[j] = star.violation[j] > 0.0 ? cons_upp[j] : 0.0;
    }
    return [base, star, obj_upp, anchor](double u) {
        ExtendedPoint z;
        z.obj = star.obj.size() ? Eigen::VectorXd(obj_upp + u * (star.obj - obj_upp))
                                : Eigen::VectorXd();
        z.violation = ((1.0 - u) * anchor + u * star.violation).cwiseMax(0.0);
        z.feasible = z.violation.size() == 0 || z.violation.maxCoeff() <= 0.0;
        return front_insert(base, z);
    };
}

/// Feasible target: slide the worst-objective feasible corner toward it.
inline FrontPath toward_feasible(const ExtendedFront& base, const ExtendedPoint& star,
                                 const Eigen::VectorXd& obj_upp, int q) {
    return [base, star, obj_upp, q](double u) {
        ExtendedPoint z;
        z.feasible = true;
        z.obj = star.obj.size() ? Eigen::VectorXd(obj_upp + u * (star.obj - obj_upp))
                                : Eigen::VectorXd();
        z.violation = Eigen::VectorXd::Zero(q);
        return front_insert(base, z);
    };
}

/// When the feasible corner alone would kill the population, shave the
/// unfeasible region instead: one edge anchor per constraint, moving
/// jointly toward the feasible corner.
inline FrontPath sweep_to_feasible(const ExtendedFront& base, const Eigen::VectorXd& obj_upp,
                                   const Eigen::VectorXd& cons_upp) {
    const int q = static_cast<int>(cons_upp.size());
    return [base, obj_upp, cons_upp, q](double u) {
        ExtendedFront out = base;
        for (int k = 0; k < q; ++k) {
            ExtendedPoint z;
            z.obj = obj_upp;
            z.violation = Eigen::VectorXd::Zero(q);
            z.violation[k] = (1.0 - u) * cons_upp[k];
            z.feasible = z.violation[k] <= 0.0;
            out.insert(z);
        }
        return out;
    };
}

/// Bisection for a u whose front keeps the population viability inside
/// [keep, window_hi].  Falls back to the largest u seen with viability
/// >= keep; empty when even u = 0 is not viable.
inline std::optional<double> dichotomy(const FrontPath& path,
                                       const std::function<double(const ExtendedFront&)>& measure,
                                       double keep, double window_hi, int max_iters = 30) {
    double lo = 0.0, hi = 1.0;
    std::optional<double> best;
    for (int iter = 0; iter < max_iters; ++iter) {
        const double mid = 0.5 * (lo + hi);
        const double value = measure(path(mid));
        if (value < keep) {
            hi = mid;
        } else if (value > window_hi) {
            best = mid;
            lo = mid;
        } else {
            return mid;
        }
    }
    if (!best && measure(path(0.0)) >= keep) best = 0.0;
    return best;
}

}  // namespace front_path

/// Uniform particle population on the non-dominated part of a box,
/// maintained by nested-subset splitting.  The running product of survival
/// fractions estimates the volume of the current region.
class ParticleSetY {
public:
    enum class Advance { ok, needs_restart };

    static ParticleSetY init_uniform(const YBox& box, int m, std::uint64_t seed) {
        if (m < 2) throw std::invalid_argument("ParticleSetY: need at least 2 particles");
        ParticleSetY set;
        set.box_ = box;
        set.rng_ = Rng::stream(seed, "y-particles");
        set.particles_.resize(m);
        for (auto& y : set.particles_) {
            y.resize(box.dim());
            for (int i = 0; i < box.dim(); ++i) y[i] = set.rng_.uniform(box.low[i], box.upp[i]);
        }
        set.region_volume_ = box.volume();
        return set;
    }

    const YBox& box() const { return box_; }
    const std::vector<Eigen::VectorXd>& particles() const { return particles_; }
    const ExtendedFront& front() const { return front_; }
    double region_volume() const { return region_volume_; }
    int size() const { return static_cast<int>(particles_.size()); }

    int count_in_region(const ExtendedFront& front) const {
        int count = 0;
        for (const auto& y : particles_) {
            if (!front.dominates(box_.probe(y))) ++count;
        }
        return count;
    }

    /// Metropolis random-walk sweeps targeting the uniform distribution on
    /// the current region.  The proposal scale tracks the population spread
    /// with a global factor adapted toward a workable acceptance rate, so
    /// that thin late-run regions still mix.
    void move_mh(int steps) {
        const int dim = box_.dim();
        Eigen::VectorXd proposal(dim);
        for (int s = 0; s < steps; ++s) {
            const Eigen::VectorXd scale = std::exp(log_step_) * proposal_scales();
            int accepted = 0;
            for (auto& y : particles_) {
                for (int i = 0; i < dim; ++i) proposal[i] = y[i] + scale[i] * rng_.normal();
                if (!box_.contains(proposal)) continue;
                if (front_.dominates(box_.probe(proposal))) continue;
                y = proposal;
                ++accepted;
            }
            const double rate = static_cast<double>(accepted) / size();
            log_step_ += (rate - 0.3) / std::sqrt(static_cast<double>(adapt_count_++));
            log_step_ = std::clamp(log_step_, std::log(1e-3), std::log(4.0));
        }
    }

    /// Multi-level transition of the population onto the region defined by
    /// the target front.  Returns needs_restart when the population dies.
    Advance advance_front(const ExtendedFront& target, double nu, int mh_steps) {
        const double keep = nu * size();
        const auto count = [this](const ExtendedFront& f) {
            return static_cast<double>(count_in_region(f));
        };
        int guard = 0;
        while (!front_.same_as(target)) {
            if (++guard > 1000) return Advance::needs_restart;
            ExtendedFront next = front_;
            for (const auto& y : target.points()) {
                ExtendedFront trial = front_insert(next, y);
                if (!trial.same_as(next) && count(trial) >= keep) next = trial;
            }

            std::vector<const ExtendedPoint*> remaining;
            for (const auto& y : target.points()) {
                bool present = false;
                for (const auto& d : next.points()) {
                    if (d.same_as(y)) {
                        present = true;
                        break;
                    }
                }
                if (!present) remaining.push_back(&y);
            }

            if (!remaining.empty()) {
                const ExtendedPoint& star = *remaining[rng_.index(remaining.size())];
                front_path::FrontPath path;
                if (!star.feasible) {
                    path = front_path::toward_infeasible(next, star, box_.obj_upper(),
                                                         box_.cons_upper());
                } else {
                    ExtendedFront anchor_front;
                    anchor_front.insert(feasible_anchor());
                    if (box_.q == 0 || count(anchor_front) >= keep) {
                        path = front_path::toward_feasible(next, star, box_.obj_upper(), box_.q);
                    } else {
                        path = front_path::sweep_to_feasible(next, box_.obj_upper(),
                                                             box_.cons_upper());
                    }
                }
                const auto u = front_path::dichotomy(path, count, keep, 2.0 * keep);
                if (!u) return Advance::needs_restart;
                next = path(*u);
            }

            if (!rebuild_on(next)) return Advance::needs_restart;
            move_mh(mh_steps);
        }
        return Advance::ok;
    }

private:
    Eigen::VectorXd proposal_scales() const {
        const int dim = box_.dim();
        const int m = size();
        Eigen::VectorXd mean = Eigen::VectorXd::Zero(dim);
        for (const auto& y : particles_) mean += y;
        mean /= m;
        Eigen::VectorXd var = Eigen::VectorXd::Zero(dim);
        for (const auto& y : particles_) var += (y - mean).cwiseAbs2();
        var /= std::max(1, m - 1);
        Eigen::VectorXd scale(dim);
        for (int i = 0; i < dim; ++i) {
            scale[i] = std::max(0.2 * std::sqrt(var[i]), 1e-6 * (box_.upp[i] - box_.low[i]));
        }
        return scale;
    }

    ExtendedPoint feasible_anchor() const {
        ExtendedPoint anchor;
        anchor.feasible = true;
        anchor.obj = box_.obj_upper();
        anchor.violation = Eigen::VectorXd::Zero(box_.q);
        return anchor;
    }

    bool rebuild_on(const ExtendedFront& next) {
        const int m = size();
        std::vector<int> survivors;
        survivors.reserve(m);
        for (int k = 0; k < m; ++k) {
            if (!next.dominates(box_.probe(particles_[k]))) survivors.push_back(k);
        }
        if (survivors.empty()) return false;
        region_volume_ *= static_cast<double>(survivors.size()) / m;
        std::vector<Eigen::VectorXd> renewed(m);
        for (std::size_t i = 0; i < survivors.size(); ++i) {
            renewed[i] = particles_[survivors[i]];
        }
        for (int k = static_cast<int>(survivors.size()); k < m; ++k) {
            renewed[k] = particles_[survivors[rng_.index(survivors.size())]];
        }
        particles_ = std::move(renewed);
        front_ = next;
        return true;
    }

    YBox box_;
    std::vector<Eigen::VectorXd> particles_;
    ExtendedFront front_;
    double region_volume_ = 0.0;
    double log_step_ = 0.0;
    int adapt_count_ = 1;
    Rng rng_{0};
};

/// Monte Carlo value of an integral over the current region: volume times
/// the particle average of the integrand.
inline double estimate_ei_integral(const ParticleSetY& set,
                                   const std::function<double(const Eigen::VectorXd&)>& integrand,
                                   double region_volume) {
    double sum = 0.0;
    for (const auto& y : set.particles()) sum += integrand(y);
    return region_volume * sum / static_cast<double>(set.size());
}

}  // namespace bmoo

#endif
