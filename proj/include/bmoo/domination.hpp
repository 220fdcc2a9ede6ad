#ifndef BMOO_DOMINATION_HPP
#define BMOO_DOMINATION_HPP

#include <Eigen/Core>

#include <algorithm>
#include <limits>
#include <vector>

namespace bmoo {

/// Image of an evaluation (f, c) under the feasibility-extended map:
/// feasible points keep their objective vector and a zero violation vector;
/// unfeasible points keep their clipped constraint violations and compare as
/// +infinity on every objective coordinate.  The raw objective values are
/// retained because front-transition paths interpolate them.
struct ExtendedPoint {
    Eigen::VectorXd obj;        // raw objective coordinates (finite)
    Eigen::VectorXd violation;  // max(c, 0), componentwise
    bool feasible = true;

    int num_obj() const { return static_cast<int>(obj.size()); }
    int num_cons() const { return static_cast<int>(violation.size()); }

    /// Objective coordinate as compared by the domination rule.
    double extended_obj(int i) const {
        return feasible ? obj[i] : std::numeric_limits<double>::infinity();
    }

    bool same_as(const ExtendedPoint& other) const {
        if (feasible != other.feasible) return false;
        if (feasible && obj != other.obj) return false;
        return violation == other.violation;
    }
};

inline ExtendedPoint extend_point(const Eigen::VectorXd& obj, const Eigen::VectorXd& cons) {
    ExtendedPoint p;
    p.feasible = (cons.size() == 0) || (cons.maxCoeff() <= 0.0);
    p.obj = obj;
    p.violation = cons.cwiseMax(0.0);
    return p;
}

/// Pareto rule on vectors over the extended reals: a <= b everywhere and
/// a < b somewhere.  Two +infinity coordinates compare equal.
inline bool pareto_dominates(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
    if (a.size() != b.size()) return false;
    bool strict = false;
    for (Eigen::Index i = 0; i < a.size(); ++i) {
        if (a[i] > b[i]) return false;
        if (a[i] < b[i]) strict = true;
    }
    return strict;
}

/// Extended domination: feasible points compare on objectives, unfeasible
/// points on clipped violations, and feasible always beats unfeasible.
/// Equivalent to the Pareto rule on the concatenated extended coordinates.
inline bool extended_dominates(const ExtendedPoint& a, const ExtendedPoint& b) {
    if (a.feasible && !b.feasible) return true;
    if (!a.feasible && b.feasible) return false;
    if (a.feasible) {
        // identical zero violations; decided on objectives alone
        return pareto_dominates(a.obj, b.obj);
    }
    // objectives compare as equal infinities; decided on violations alone
    return pareto_dominates(a.violation, b.violation);
}

inline bool extended_dominates(const Eigen::VectorXd& f_a, const Eigen::VectorXd& c_a,
                               const Eigen::VectorXd& f_b, const Eigen::VectorXd& c_b) {
    return extended_dominates(extend_point(f_a, c_a), extend_point(f_b, c_b));
}

/// A set of mutually non-dominated extended points.
class ExtendedFront {
public:
    ExtendedFront() = default;

    const std::vector<ExtendedPoint>& points() const { return points_; }
    std::size_t size() const { return points_.size(); }
    bool empty() const { return points_.empty(); }

    /// Insert y, dropping it if dominated by (or equal to) a member and
    /// removing members it dominates.  Returns true when y entered the set.
    bool insert(const ExtendedPoint& y) {
        for (const auto& p : points_) {
            if (extended_dominates(p, y) || p.same_as(y)) return false;
        }
        std::erase_if(points_, [&](const ExtendedPoint& p) { return extended_dominates(y, p); });
        points_.push_back(y);
        return true;
    }

    /// True when some member dominates the probe point.
    bool dominates(const ExtendedPoint& probe) const {
        for (const auto& p : points_) {
            if (extended_dominates(p, probe)) return true;
        }
        return false;
    }

    bool same_as(const ExtendedFront& other) const {
        if (points_.size() != other.points_.size()) return false;
        for (const auto& p : points_) {
            bool found = false;
            for (const auto& q : other.points_) {
                if (p.same_as(q)) {
                    found = true;
                    break;
                }
            }
            if (!found) return false;
        }
        return true;
    }

private:
    std::vector<ExtendedPoint> points_;
};

inline ExtendedFront front_insert(const ExtendedFront& front, const ExtendedPoint& y) {
    ExtendedFront out = front;
    out.insert(y);
    return out;
}

/// Membership test for the dominated part of the bounding box: the probe is
/// first mapped to its extended image (clipped violations, +inf objectives
/// when unfeasible) and then compared against the front.
inline bool in_dominated_region(const ExtendedFront& front, const Eigen::VectorXd& obj,
                                const Eigen::VectorXd& cons) {
    return front.dominates(extend_point(obj, cons));
}

/// Same test on raw (f, c) coordinates without building the extended image;
/// used in sampling loops.
inline bool front_dominates_eval(const ExtendedFront& front, const Eigen::VectorXd& f,
                                 const Eigen::VectorXd& c) {
    const bool probe_feasible = c.size() == 0 || c.maxCoeff() <= 0.0;
    for (const auto& member : front.points()) {
        if (probe_feasible) {
            if (member.feasible && pareto_dominates(member.obj, f)) return true;
        } else {
            if (member.feasible) return true;
            bool strict = false, dominated = true;
            for (Eigen::Index j = 0; j < c.size(); ++j) {
                const double clipped = std::max(c[j], 0.0);
                if (member.violation[j] > clipped) {
                    dominated = false;
                    break;
                }
                if (member.violation[j] < clipped) strict = true;
            }
            if (dominated && strict) return true;
        }
    }
    return false;
}

}  // namespace bmoo

#endif
