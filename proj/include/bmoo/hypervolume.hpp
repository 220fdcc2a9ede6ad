#ifndef BMOO_HYPERVOLUME_HPP
#define BMOO_HYPERVOLUME_HPP

#include <Eigen/Core>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

#include "bmoo/rng.hpp"

namespace bmoo {

/// Reference data for hypervolume progress: the reference point and the
/// known dominated volume of the true front with respect to it.
struct HvReference {
    Eigen::VectorXd ref_point;
    double ref_volume = 0.0;
};

/// Exact dominated area for two objectives by sort-and-sweep.  Points beyond
/// the reference contribute their clipped part only; a coordinate exactly at
/// the reference contributes zero measure.
inline double hv_exact_2d(const std::vector<Eigen::VectorXd>& front,
                          const Eigen::VectorXd& ref) {
    if (ref.size() != 2) throw std::invalid_argument("hv_exact_2d: two objectives only");
    std::vector<std::pair<double, double>> pts;
    pts.reserve(front.size());
    for (const auto& f : front) {
        if (f.size() != 2) throw std::invalid_argument("hv_exact_2d: two objectives only");
        if (f[0] >= ref[0] || f[1] >= ref[1]) continue;  // empty clipped box
        pts.emplace_back(f[0], f[1]);
    }
    if (pts.empty()) return 0.0;
    std::sort(pts.begin(), pts.end());
    // left-to-right sweep over the non-dominated staircase
    double area = 0.0;
    double prev_f2 = ref[1];
    for (const auto& [f1, f2] : pts) {
        if (f2 >= prev_f2) continue;  // dominated within the sweep
        area += (ref[0] - f1) * (prev_f2 - f2);
        prev_f2 = f2;
    }
    return area;
}

/// Monte Carlo dominated-volume estimate for any number of objectives,
/// sampled inside [componentwise front minimum, ref].  Returns the estimate
/// and its binomial standard deviation.
inline std::pair<double, double> hv_monte_carlo(const std::vector<Eigen::VectorXd>& front,
                                                const Eigen::VectorXd& ref, int n_samples,
                                                std::uint64_t seed) {
    const int p = static_cast<int>(ref.size());
    if (front.empty()) return {0.0, 0.0};
    Eigen::VectorXd low = front[0];
    for (const auto& f : front) low = low.cwiseMin(f);
    low = low.cwiseMin(ref);
    double box = 1.0;
    for (int i = 0; i < p; ++i) box *= ref[i] - low[i];
    if (box <= 0.0) return {0.0, 0.0};

    Rng rng = Rng::stream(seed, "hv-mc");
    Eigen::VectorXd y(p);
    int hits = 0;
    for (int s = 0; s < n_samples; ++s) {
        for (int i = 0; i < p; ++i) y[i] = rng.uniform(low[i], ref[i]);
        for (const auto& f : front) {
            bool dom = true;
            for (int i = 0; i < p; ++i) {
                if (f[i] > y[i]) {
                    dom = false;
                    break;
                }
            }
            if (dom) {
                ++hits;
                break;
            }
        }
    }
    const double rate = static_cast<double>(hits) / n_samples;
    const double sd = box * std::sqrt(std::max(rate * (1.0 - rate), 0.0) / n_samples);
    return {box * rate, sd};
}

/// Dominated volume dispatching on the number of objectives.
inline double hypervolume(const std::vector<Eigen::VectorXd>& front, const Eigen::VectorXd& ref,
                          int mc_samples = 200000, std::uint64_t seed = 12345) {
    if (front.empty()) return 0.0;
    if (ref.size() == 2) return hv_exact_2d(front, ref);
    return hv_monte_carlo(front, ref, mc_samples, seed).first;
}

/// Fraction of the reference volume dominated after each iteration, given
/// the running history of feasible objective vectors.  Nondecreasing; values
/// above one are possible when the reference volume is under-estimated.
inline std::vector<double> hv_fraction(const std::vector<std::vector<Eigen::VectorXd>>& fronts,
                                       const HvReference& ref, int mc_samples = 200000,
                                       std::uint64_t seed = 12345) {
    std::vector<double> out;
    out.reserve(fronts.size());
    for (const auto& front : fronts) {
        out.push_back(front.empty()
                          ? 0.0
                          : hypervolume(front, ref.ref_point, mc_samples, seed) / ref.ref_volume);
    }
    return out;
}

}  // namespace bmoo

#endif
